#include "thetasieve/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thetasieve {

namespace {

constexpr double kMinSigma = -3.0;

void check_a(double a, const char* who)
{
    if (!(a >= 1.0) || !std::isfinite(a)) {
        std::ostringstream msg;
        msg << who << ": a must be a finite number >= 1, got " << a;
        throw std::domain_error(msg.str());
    }
}

void check_sigma(double sigma, const char* who)
{
    if (!(sigma >= kMinSigma)) {
        std::ostringstream msg;
        msg << who << ": Re s = " << sigma << " is outside the strip Re s >= -3";
        throw std::domain_error(msg.str());
    }
}

} // namespace

SpectralFunction::SpectralFunction(double a, const BuchstabTable& table)
    : a_(a), log_a1_(std::log1p(a)), nodes_(&table.deviation_nodes())
{
    check_a(a, "SpectralFunction");
    log_kernel_.reserve(nodes_->nodes.size());
    for (double t : nodes_->nodes) {
        log_kernel_.push_back(std::log(a * t + 1.0));
    }
}

Complex SpectralFunction::operator()(Complex s) const
{
    check_sigma(s.real(), "g_eval");
    const Complex s1 = s + 1.0;
    Complex integral = 0.0;
    for (std::size_t i = 0; i < log_kernel_.size(); ++i) {
        integral += nodes_->weights[i] * std::exp(-s1 * log_kernel_[i]);
    }
    return s + kExpMinusGamma / a_ * std::exp(-s * log_a1_) + s * integral;
}

double SpectralFunction::operator()(double s) const
{
    check_sigma(s, "g_eval");
    const double s1 = s + 1.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < log_kernel_.size(); ++i) {
        integral += nodes_->weights[i] * std::exp(-s1 * log_kernel_[i]);
    }
    return s + kExpMinusGamma / a_ * std::exp(-s * log_a1_) + s * integral;
}

Complex g_eval(double a, Complex s)
{
    return SpectralFunction(a)(s);
}

std::pair<double, double> lambda_bounds(double a)
{
    check_a(a, "lambda_bounds");
    const double L = std::log1p(a);
    const double base = 1.0 + kExpMinusGamma * L / a;
    const double scale = kExpMinusGamma / a;
    return {scale * (base - 0.16 / a), scale * (base + L * L / (a * a))};
}

double g_minus(double a, double s)
{
    check_a(a, "g_minus");
    return s + kExpMinusGamma / (a * std::pow(a + 1.0, s)) + s * 0.16 / std::pow(a + 1.0, s + 1.0);
}

double g_plus(double a, double s)
{
    check_a(a, "g_plus");
    return s + kExpMinusGamma / (a * std::pow(a + 1.0, s)) + s * 0.11 / std::pow(a * kExpGamma + 1.0, s + 1.0);
}

LambdaResult solve_lambda(double a, const BuchstabTable& table)
{
    check_a(a, "solve_lambda");
    const auto [l_a, u_a] = lambda_bounds(a);
    const SpectralFunction g(a, table);
    LambdaResult r{a, 1.0, 0.0, -1.0, -1.0, l_a, u_a, u_a + 1.0};
    if (a == 1.0) {
        r.residual = std::abs(g(-1.0));
        return r;
    }

    double lo = -1.0;
    double hi = 0.0;
    double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) {
        std::ostringstream msg;
        msg << "solve_lambda: no sign change of g_a on [-1, 0] for a = " << a << " (g(-1) = " << g_lo
            << ", g(0) = " << g_hi << "); the quadrature is unreliable";
        throw std::runtime_error(msg.str());
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double v = g(mid);
        if (v < 0.0) {
            lo = mid;
            g_lo = v;
        } else {
            hi = mid;
        }
    }

    constexpr double kDiffStep = 1e-7;
    double s = 0.5 * (lo + hi);
    double v = g(s);
    for (int it = 0; it < 60 && std::abs(v) > 1e-14; ++it) {
        const double slope = (g(s + kDiffStep) - g(s - kDiffStep)) / (2.0 * kDiffStep);
        double next = s - v / slope;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == s) {
            break;
        }
        s = next;
        v = g(s);
        if (v < 0.0) {
            lo = s;
        } else {
            hi = s;
        }
    }
    r.lambda = -s;
    r.residual = std::abs(v);
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    if (r.residual > 1e-10) {
        std::ostringstream msg;
        msg << "solve_lambda: residual " << r.residual << " above 1e-10 for a = " << a;
        throw std::runtime_error(msg.str());
    }
    return r;
}

double H_major(double a, double sigma)
{
    check_a(a, "H_major");
    check_sigma(sigma, "H_major");
    const auto& table = default_buchstab();
    const double T = table.u_max();
    std::vector<double> breaks;
    for (int k = 2; k < table.u_max(); ++k) {
        breaks.push_back(k);
    }
    const auto body = integrate_abs(
        [&](double t) { return table.omega_prime(t) * std::exp(-sigma * std::log(a * t + 1.0)); }, 1.0, T, breaks);
    // |omega'(t)| <= 1/Gamma(t + 1) past the table.
    const auto tail = integrate_smooth(
        [&](double t) { return gamma_reciprocal(t) * std::exp(-sigma * std::log(a * t + 1.0)); }, T, T + 60.0, {},
        0.5);
    return 1.0 / (a * std::pow(a + 1.0, sigma)) + (body.value + tail.value) / a;
}

ZeroFreeReport zero_free_spot_check(double a, double tau_step, double tau_max)
{
    if (!(a >= 1.0 && a <= 10.0)) {
        throw std::domain_error("zero_free_spot_check: a must lie in [1, 10]");
    }
    if (!(tau_step > 0.0) || !(tau_max >= 0.0)) {
        throw std::invalid_argument("zero_free_spot_check: bad tau grid");
    }
    const SpectralFunction g(a);
    const double mu = lambda_bounds(a).second + 1.0;
    ZeroFreeReport rep{a, mu, 0.0, 0.0, false};
    const auto n = static_cast<long>(std::llround(2.0 * tau_max / tau_step));
    for (long i = 0; i <= n; ++i) {
        const double tau = -tau_max + static_cast<double>(i) * tau_step;
        const Complex s(-mu, tau);
        const double ratio = std::abs(g.h(s)) / std::abs(s);
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax_tau = tau;
        }
    }
    rep.passes = rep.max_ratio < 0.98;
    return rep;
}

bool HalfPlaneConstants::holds() const
{
    return mu_1 - 1.0 < 1.1 && mu_10 - 1.0 < 0.1 && growth_small < 2.1 && prefactor_small < 2.4 &&
           growth_large < 1.2 && prefactor_large < 0.73 && moment_small.hi < 0.5 / 2.1 &&
           moment_large.hi < 0.21 / 1.2;
}

HalfPlaneConstants half_plane_constants()
{
    HalfPlaneConstants c{};
    c.mu_1 = lambda_bounds(1.0).second + 1.0;
    c.mu_10 = lambda_bounds(10.0).second + 1.0;
    c.growth_small = std::pow(2.0, c.mu_1 - 1.0);
    c.prefactor_small = kExpMinusGamma * std::pow(2.0, c.mu_1);
    c.growth_large = std::pow(11.0, c.mu_10 - 1.0);
    c.prefactor_large = kExpMinusGamma / (10.0 * std::pow(11.0, -c.mu_10));
    c.moment_small = deviation_integral(1.0, 1.1);
    c.moment_large = deviation_integral(1.0, 0.1);
    return c;
}

} // namespace thetasieve
