#include "thetasieve/volterra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thetasieve/membership.hpp"

namespace thetasieve {

namespace {

struct Line {
    double slope;
    double intercept;
};

Line least_squares(std::span<const double> x, std::span<const double> y)
{
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("least squares: abscissae are all equal");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

} // namespace

double omega_cap(double a, double u, const BuchstabTable& table)
{
    if (!(a >= 1.0)) {
        throw std::domain_error("omega_cap: a must be >= 1");
    }
    if (!(u >= 0.0)) {
        throw std::domain_error("omega_cap: u must be >= 0");
    }
    return table.omega(std::expm1(u) / a);
}

double FaGrid::at(double zz) const
{
    if (!(zz >= 0.0) || zz > z(values.size() - 1) * (1.0 + 1e-12)) {
        throw std::out_of_range("FaGrid::at: z outside the computed range");
    }
    const double x = zz / h;
    const auto k = std::min(static_cast<std::size_t>(x), values.size() - 2);
    const double t = x - static_cast<double>(k);
    return values[k] + t * (values[k + 1] - values[k]);
}

FaGrid solve_F(double a, double h, double z_max, const BuchstabTable& table)
{
    if (!(a >= 1.0)) {
        throw std::domain_error("solve_F: a must be >= 1");
    }
    if (!(h > 0.0 && h <= 1e-2)) {
        throw std::invalid_argument("solve_F: step must lie in (0, 1e-2]");
    }
    if (!(z_max > 0.0 && z_max <= 30.0)) {
        throw std::invalid_argument("solve_F: z_max must lie in (0, 30]");
    }
    const auto n = static_cast<std::size_t>(std::llround(z_max / h));
    FaGrid grid{a, h, static_cast<double>(n) * h, std::vector<double>(n + 1, 1.0)};
    auto& F = grid.values;

    std::vector<double> kernel(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        kernel[m] = omega_cap(a, static_cast<double>(m) * h, table);
    }

    const double delay = std::log1p(a);
    for (std::size_t k = 1; k <= n; ++k) {
        const double zk = static_cast<double>(k) * h;
        if (zk <= delay) {
            continue;
        }
        const double u_star = zk - delay;
        const double pos = u_star / h;
        const auto J = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(J);

        double integral = 0.0;
        if (J > 0) {
            double s = 0.5 * (F[0] * kernel[k] + F[J] * kernel[k - J]);
            for (std::size_t j = 1; j < J; ++j) {
                s += F[j] * kernel[k - j];
            }
            integral = h * s;
        }
        if (frac > 0.0) {
            const double f_star = F[J] + frac * (F[J + 1] - F[J]);
            integral += 0.5 * frac * h * (F[J] * kernel[k - J] + f_star);
        }
        F[k] = 1.0 - integral / a;
    }
    return grid;
}

DecayFit decay_fit(const FaGrid& grid, std::optional<std::pair<double, double>> window)
{
    const double z_end = grid.z(grid.values.size() - 1);
    const auto [z1, z2] = window.value_or(std::pair{0.5 * z_end, 0.8 * z_end});
    if (!(z1 >= 0.0 && z1 < z2 && z2 <= z_end)) {
        std::ostringstream msg;
        msg << "decay_fit: window [" << z1 << ", " << z2 << "] is not inside [0, " << z_end << "]";
        throw std::invalid_argument(msg.str());
    }
    std::vector<double> zs;
    std::vector<double> logs;
    for (std::size_t k = 0; k < grid.values.size(); ++k) {
        const double z = grid.z(k);
        if (z < z1 || z > z2) {
            continue;
        }
        if (!(grid.values[k] > 0.0)) {
            std::ostringstream msg;
            msg << "decay_fit: F(" << z << ") = " << grid.values[k]
                << " is not positive; z_max is too large for the grid accuracy";
            throw std::runtime_error(msg.str());
        }
        zs.push_back(z);
        logs.push_back(std::log(grid.values[k]));
    }
    if (zs.size() < 2) {
        throw std::invalid_argument("decay_fit: fewer than two grid points in the window");
    }
    const Line line = least_squares(zs, logs);
    double worst = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        worst = std::max(worst, std::abs(logs[i] - (line.intercept + line.slope * zs[i])));
    }
    return {-line.slope, std::exp(line.intercept), z1, z2, worst};
}

ExponentFit empirical_exponent(const ThetaSpec& spec, std::span<const double> xs, unsigned threads)
{
    if (xs.size() < 2) {
        throw std::invalid_argument("empirical_exponent: need at least two x values");
    }
    ExponentFit fit{};
    std::vector<double> lx;
    std::vector<double> ly;
    for (double x : xs) {
        if (!(x >= 3.0)) {
            throw std::invalid_argument("empirical_exponent: x values must be at least 3");
        }
        const double ratio = static_cast<double>(count_B(x, spec, threads)) / x;
        fit.points.emplace_back(x, ratio);
        lx.push_back(std::log(std::log(x)));
        ly.push_back(std::log(ratio));
    }
    const Line line = least_squares(lx, ly);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    return fit;
}

} // namespace thetasieve
