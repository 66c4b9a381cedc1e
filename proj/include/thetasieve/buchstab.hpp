#ifndef THETASIEVE_BUCHSTAB_HPP
#define THETASIEVE_BUCHSTAB_HPP

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

#include "thetasieve/interval.hpp"
#include "thetasieve/quadrature.hpp"

namespace thetasieve {

inline constexpr double kEulerGamma = std::numbers::egamma_v<double>;
inline const double kExpMinusGamma = 0.56145948356688516982;  // e^{-gamma}
inline const double kExpGamma = 1.78107241799019798524;      // e^{gamma}

/// Buchstab's function tabulated on [1, u_max]. On [1, 3] the closed forms
/// are used; beyond, F(u) = u omega(u) is advanced one unit interval at a
/// time from F'(u) = omega(u - 1) with composite Simpson weights. Off-grid
/// values come from cubic interpolation kept inside one unit interval.
class BuchstabTable {
public:
    explicit BuchstabTable(double grid_step = 1e-4, int u_max = 25);

    double omega(double u) const;
    /// Right derivative: -1/u^2 on [1, 2), (omega(u-1) - omega(u))/u from 2 on.
    double omega_prime(double u) const;

    double grid_step() const { return step_; }
    int u_max() const { return u_max_; }
    std::size_t grid_size() const { return values_.size(); }
    double grid_point(std::size_t i) const;
    std::span<const double> grid_values() const { return values_; }
    std::span<const double> grid_derivatives() const { return derivatives_; }

    /// Nodes on [1, u_max] (split at integers) with weights already multiplied
    /// by omega(t) - e^{-gamma}; shared by every evaluation of the entire
    /// function built from the deviation.
    const GaussNodes& deviation_nodes() const { return deviation_; }

    /// Table accuracy claim used in error budgets, checked by the unit tests.
    static constexpr double kAbsoluteError = 1e-10;

    void write_csv(std::ostream& out, double step, int digits = 10) const;

private:
    double from_grid(int piece, double offset) const;

    double step_;
    int per_unit_;
    int u_max_;
    std::vector<double> values_;
    std::vector<double> derivatives_;
    GaussNodes deviation_;
};

const BuchstabTable& default_buchstab();

double omega(double u);
double omega_prime(double u);

/// 1/Gamma(u + 1).
double gamma_reciprocal(double u);

/// Enclosure of the integral of |omega(t) - e^{-gamma}| t^c over [t0, inf).
/// Requires c <= 1.2 and t0 >= 1.
Interval deviation_integral(double t0, double c, const BuchstabTable& table = default_buchstab());

} // namespace thetasieve

#endif
