#include "thetasieve/buchstab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace thetasieve {

namespace {

double omega_closed(double u)
{
    return u < 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
}

std::vector<double> integer_breaks(int lo, int hi)
{
    std::vector<double> out;
    for (int k = lo; k <= hi; ++k) {
        out.push_back(k);
    }
    return out;
}

} // namespace

BuchstabTable::BuchstabTable(double grid_step, int u_max) : step_(grid_step), u_max_(u_max)
{
    if (!(grid_step > 0.0) || grid_step > 0.25) {
        throw std::invalid_argument("BuchstabTable: grid step must be in (0, 1/4]");
    }
    per_unit_ = static_cast<int>(std::lround(1.0 / grid_step));
    if (std::abs(per_unit_ * grid_step - 1.0) > 1e-9) {
        throw std::invalid_argument("BuchstabTable: 1/grid_step must be an integer");
    }
    if (u_max < 3 || u_max > 200) {
        throw std::invalid_argument("BuchstabTable: u_max must be in [3, 200]");
    }
    step_ = 1.0 / per_unit_;
    const auto n = static_cast<std::size_t>(u_max - 1) * per_unit_ + 1;
    values_.resize(n);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(2 * per_unit_); ++i) {
        values_[i] = omega_closed(grid_point(i));
    }

    // F(k + jh) = F(k) + integral of omega(t - 1) over [k, k + jh]. Even j use
    // Simpson from the left end; odd j start with a one-sided cubic step and
    // continue by Simpson, so every value carries O(h^4) error.
    const double h = step_;
    std::vector<double> F(per_unit_ + 1);
    for (int k = 3; k < u_max; ++k) {
        const std::size_t prev = static_cast<std::size_t>(k - 2) * per_unit_;
        const std::size_t here = prev + per_unit_;
        const double* f = &values_[prev];
        F[0] = k * values_[here];
        F[1] = F[0] + h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        for (int j = 2; j <= per_unit_; ++j) {
            F[j] = F[j - 2] + h / 3.0 * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
        }
        for (int j = 1; j <= per_unit_; ++j) {
            values_[here + j] = F[j] / grid_point(here + j);
        }
    }

    derivatives_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = grid_point(i);
        derivatives_[i] = i < static_cast<std::size_t>(per_unit_) ? -1.0 / (u * u)
                                                                  : (values_[i - per_unit_] - values_[i]) / u;
    }

    const auto breaks = integer_breaks(2, u_max - 1);
    deviation_ = GaussNodes::piecewise(1.0, u_max, breaks, 0.125);
    for (std::size_t i = 0; i < deviation_.nodes.size(); ++i) {
        deviation_.weights[i] *= omega(deviation_.nodes[i]) - kExpMinusGamma;
    }
}

double BuchstabTable::grid_point(std::size_t i) const
{
    return 1.0 + static_cast<double>(i) / per_unit_;
}

double BuchstabTable::from_grid(int piece, double offset) const
{
    const double x = offset * per_unit_;
    const int i0 = static_cast<int>(std::floor(x));
    const int start = std::clamp(i0 - 1, 0, per_unit_ - 3);
    const double* y = &values_[static_cast<std::size_t>(piece - 1) * per_unit_ + start];
    const double t = x - start;
    // Lagrange cubic through nodes 0..3.
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
}

double BuchstabTable::omega(double u) const
{
    if (std::isnan(u)) {
        throw std::domain_error("omega: NaN argument");
    }
    if (u < 1.0) {
        return 0.0;
    }
    if (u <= 3.0) {
        return omega_closed(u);
    }
    if (u >= u_max_) {
        return kExpMinusGamma;
    }
    const int k = static_cast<int>(std::floor(u));
    return from_grid(k, u - k);
}

double BuchstabTable::omega_prime(double u) const
{
    if (u < 1.0) {
        return 0.0;
    }
    if (u < 2.0) {
        return -1.0 / (u * u);
    }
    return (omega(u - 1.0) - omega(u)) / u;
}

void BuchstabTable::write_csv(std::ostream& out, double step, int digits) const
{
    if (!(step > 0.0)) {
        throw std::invalid_argument("write_csv: step must be positive");
    }
    out << "u,omega,omega_prime\n" << std::setprecision(digits);
    const auto n = static_cast<std::size_t>(std::floor((u_max_ - 1.0) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
        const double u = 1.0 + static_cast<double>(i) * step;
        out << u << ',' << omega(u) << ',' << omega_prime(u) << '\n';
    }
}

const BuchstabTable& default_buchstab()
{
    static const BuchstabTable table;
    return table;
}

double omega(double u)
{
    return default_buchstab().omega(u);
}

double omega_prime(double u)
{
    return default_buchstab().omega_prime(u);
}

double gamma_reciprocal(double u)
{
    if (u + 1.0 > 170.0) {
        return std::exp(-std::lgamma(u + 1.0));
    }
    return 1.0 / std::tgamma(u + 1.0);
}

Interval deviation_integral(double t0, double c, const BuchstabTable& table)
{
    if (!(c <= 1.2) || !(c > -1.0)) {
        throw std::domain_error("deviation_integral: exponent must lie in (-1, 1.2]");
    }
    if (!(t0 >= 1.0)) {
        throw std::domain_error("deviation_integral: lower limit must be at least 1");
    }
    const double T = table.u_max();
    double value = 0.0;
    double error = 0.0;
    if (t0 < T) {
        const auto breaks = integer_breaks(2, table.u_max() - 1);
        const auto r = integrate_abs(
            [&](double t) { return (table.omega(t) - kExpMinusGamma) * std::pow(t, c); }, t0, T, breaks);
        value = r.value;
        error = r.error + BuchstabTable::kAbsoluteError * (std::pow(T, c + 1.0) - std::pow(t0, c + 1.0)) / (c + 1.0);
    }
    // Beyond the table only |omega - e^{-gamma}| <= 1/Gamma(t + 1) is used.
    const double from = std::max(t0, T);
    const auto tail =
        integrate_smooth([&](double t) { return std::pow(t, c) * gamma_reciprocal(t); }, from, from + 60.0, {}, 0.5);
    const double tail_hi = round_up((tail.value + tail.error) * (1.0 + 1e-9));
    return Interval(std::max(0.0, round_down(value - error)), round_up(value + error + tail_hi));
}

} // namespace thetasieve
