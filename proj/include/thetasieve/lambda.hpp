#ifndef THETASIEVE_LAMBDA_HPP
#define THETASIEVE_LAMBDA_HPP

#include <complex>
#include <utility>

#include "thetasieve/buchstab.hpp"

namespace thetasieve {

using Complex = std::complex<double>;

/// g_a(s) = s + e^{-gamma}/(a (a+1)^s) + s * int_1^inf (omega(t) - e^{-gamma}) (at+1)^{-s-1} dt,
/// for a >= 1. The integral is truncated at the table end, where the
/// deviation is below 1/Gamma(u_max + 1).
class SpectralFunction {
public:
    explicit SpectralFunction(double a, const BuchstabTable& table = default_buchstab());

    double a() const { return a_; }

    /// Requires Re s >= -3.
    Complex operator()(Complex s) const;
    double operator()(double s) const;

    /// h_a(s) = g_a(s) - s.
    Complex h(Complex s) const { return (*this)(s) - s; }

private:
    double a_;
    double log_a1_;
    const GaussNodes* nodes_;
    std::vector<double> log_kernel_;  // log(a t_i + 1)
};

Complex g_eval(double a, Complex s);

/// (l_a, u_a), the explicit lower and upper bounds for lambda_a.
std::pair<double, double> lambda_bounds(double a);

/// The elementary minorant and majorant comparison functions.
double g_minus(double a, double s);
double g_plus(double a, double s);

struct LambdaResult {
    double a;
    double lambda;
    double residual;  // |g_a(-lambda)|
    double bracket_lo;  // final sign-change bracket for s = -lambda
    double bracket_hi;
    double l_a;
    double u_a;
    double mu_a;  // u_a + 1
};

/// The unique real zero of g_a in (-1, 0), returned as lambda_a = -s.
/// a = 1 gives exactly 1 since g_1(-1) = 0.
LambdaResult solve_lambda(double a, const BuchstabTable& table = default_buchstab());

/// H_a(sigma) = 1/(a (a+1)^sigma) + (1/a) int_1^inf |omega'(t)| (at+1)^{-sigma} dt.
double H_major(double a, double sigma);

struct ZeroFreeReport {
    double a;
    double mu;
    double max_ratio;  // max |h_a(s)|/|s| on the sampled segment
    double argmax_tau;
    bool passes;  // max_ratio < 0.98
};

/// Samples |h_a(-mu_a + i tau)|/|-mu_a + i tau| for tau in [-tau_max, tau_max].
ZeroFreeReport zero_free_spot_check(double a, double tau_step = 0.01, double tau_max = 5.0);

/// Constants behind the half-plane comparison, at the two ends a = 1, a = 10.
struct HalfPlaneConstants {
    double mu_1;
    double mu_10;
    double growth_small;     // 2^{mu_1 - 1}, must be < 2.1
    double prefactor_small;  // e^{-gamma} 2^{mu_1}, must be < 2.4
    double growth_large;     // 11^{mu_10 - 1}, must be < 1.2
    double prefactor_large;  // e^{-gamma} / (10 * 11^{-mu_10}), must be < 0.73
    Interval moment_small;   // int |omega - e^{-gamma}| t^{1.1}, must be < 0.5/2.1
    Interval moment_large;   // int |omega - e^{-gamma}| t^{0.1}, must be < 0.21/1.2
    bool holds() const;
};

HalfPlaneConstants half_plane_constants();

} // namespace thetasieve

#endif
