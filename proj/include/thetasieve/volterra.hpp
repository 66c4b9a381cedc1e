#ifndef THETASIEVE_VOLTERRA_HPP
#define THETASIEVE_VOLTERRA_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "thetasieve/buchstab.hpp"
#include "thetasieve/theta.hpp"

namespace thetasieve {

/// Omega_a(u) = omega((e^u - 1)/a); zero for u < log(a + 1).
double omega_cap(double a, double u, const BuchstabTable& table = default_buchstab());

/// F_a on the grid z_k = k h, solving F(z) = 1 - (1/a) int_0^z F(u) Omega_a(z - u) du.
struct FaGrid {
    double a;
    double h;
    double z_max;
    std::vector<double> values;

    double z(std::size_t k) const { return static_cast<double>(k) * h; }
    /// Linear interpolation; z must lie in [0, z_max].
    double at(double z) const;
};

/// Marching trapezoid scheme. The kernel vanishes on [0, log(a+1)), so the
/// integral stops at z - log(a+1) and each step uses earlier values only; the
/// last partial panel uses a linearly interpolated F and Omega_a = 1 at the
/// jump. Requires h <= 1e-2 and z_max <= 30.
FaGrid solve_F(double a, double h = 1e-3, double z_max = 15.0, const BuchstabTable& table = default_buchstab());

struct DecayFit {
    double lambda_hat;
    double c_hat;
    double z1;
    double z2;
    double max_residual;  // of log F against the fitted line
};

/// Least-squares line through (z, log F) over the window, default
/// [0.5 z_max, 0.8 z_max].
DecayFit decay_fit(const FaGrid& grid, std::optional<std::pair<double, double>> window = std::nullopt);

struct ExponentFit {
    double slope;      // of log(B(x)/x) against log log x
    double intercept;
    std::vector<std::pair<double, double>> points;  // (x, B(x)/x)
};

/// Indicative fit of B(x)/x ~ C (log x)^slope over the given x values.
ExponentFit empirical_exponent(const ThetaSpec& spec, std::span<const double> xs, unsigned threads = 1);

} // namespace thetasieve

#endif
