#ifndef THETASIEVE_QUADRATURE_HPP
#define THETASIEVE_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace thetasieve {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

// Fixed node set for integrals over [lo, hi] whose integrand is smooth
// between the given breakpoints: every piece is cut into subintervals of at
// most `max_length` and carries a 20-point Gauss-Legendre rule.
struct GaussNodes {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussNodes piecewise(double lo, double hi, std::span<const double> breakpoints, double max_length);

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(nodes[i]);
        }
        return sum;
    }
};

/// Integral of f over [lo, hi], smooth between breakpoints (10- vs 20-point
/// Gauss-Legendre difference as the error estimate).
QuadratureResult integrate_smooth(const std::function<double(double)>& f, double lo, double hi,
                                  std::span<const double> breakpoints, double max_length = 0.05);

/// Integral of |f| over [lo, hi]. Sign changes are located on a scan grid of
/// spacing `scan_step` and refined by bisection; each signed piece is then
/// integrated separately so the kink of |f| never falls inside a rule.
QuadratureResult integrate_abs(const std::function<double(double)>& f, double lo, double hi,
                               std::span<const double> breakpoints, double scan_step = 1e-3);

} // namespace thetasieve

#endif
