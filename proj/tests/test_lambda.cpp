#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thetasieve/lambda.hpp"

using namespace thetasieve;
using boost::math::quadrature::gauss_kronrod;

namespace {

// g_a(s) with the integral done by adaptive Gauss-Kronrod, one unit piece at a time.
Complex g_oracle(double a, Complex s)
{
    auto piece = [&](auto part) {
        double sum = 0.0;
        for (int k = 1; k < 25; ++k) {
            sum += gauss_kronrod<double, 31>::integrate(
                [&](double t) {
                    const Complex w = std::exp(-(s + 1.0) * std::log(a * t + 1.0));
                    return (omega(t) - kExpMinusGamma) * part(w);
                },
                k, k + 1, 8, 1e-14);
        }
        return sum;
    };
    const Complex integral(piece([](Complex w) { return w.real(); }), piece([](Complex w) { return w.imag(); }));
    return s + kExpMinusGamma / a * std::pow(a + 1.0, -s) + s * integral;
}

const std::vector<std::pair<double, double>> kPrinted{
    {1.0, 1.0},     {1.1, 0.8854},  {1.2, 0.7927},  {1.3, 0.7164},  {1.4, 0.6526},   {1.5, 0.5985},
    {1.6, 0.5522},  {1.7, 0.5122},  {1.8, 0.4772},  {1.9, 0.4464},  {2.0, 0.4191},   {2.5, 0.3195},
    {3.0, 0.2567},  {3.5, 0.2139},  {4.0, 0.1829},  {4.5, 0.1595},  {5.0, 0.1412},   {6.0, 0.1147},
    {7.0, 0.09639}, {8.0, 0.08301}, {9.0, 0.07283}, {10.0, 0.06484}};

} // namespace

TEST_CASE("spectral function examples")
{
    CHECK(std::abs(g_eval(1.0, -1.0)) < 1e-9);
    for (double a : {1.0, 2.0, 7.5}) {
        CHECK(SpectralFunction(a)(0.0) == doctest::Approx(kExpMinusGamma / a).epsilon(1e-15));
    }
    CHECK(std::abs(g_eval(2.0, -0.4191)) <= 1e-3);
    CHECK_THROWS_AS(g_eval(2.0, Complex(-3.5, 0.0)), std::domain_error);
    CHECK_THROWS_AS(SpectralFunction(0.5), std::domain_error);
}

TEST_CASE("spectral function against adaptive quadrature")
{
    for (double a : {1.0, 1.5, 3.0, 10.0}) {
        const SpectralFunction g(a);
        for (Complex s : {Complex(-0.5, 0.0), Complex(-1.7, 2.0), Complex(0.3, -4.0), Complex(-2.9, 0.1)}) {
            const Complex ref = g_oracle(a, s);
            INFO("a=" << a << " s=" << s);
            CHECK(std::abs(g(s) - ref) < 1e-11 * (1.0 + std::abs(ref)));
        }
        CHECK(g(-0.25) == doctest::Approx(g(Complex(-0.25, 0.0)).real()).epsilon(1e-15));
    }
}

TEST_CASE("conjugate symmetry")
{
    const SpectralFunction g(2.0);
    const Complex s(-0.8, 1.3);
    CHECK(std::abs(g(std::conj(s)) - std::conj(g(s))) < 1e-14);
}

TEST_CASE("printed table values")
{
    for (auto [a, printed] : kPrinted) {
        const auto r = solve_lambda(a);
        INFO("a=" << a << " lambda=" << r.lambda);
        CHECK(std::abs(r.lambda - printed) <= 5e-4);
        // truncations: the computed value lies above the printed digits
        CHECK(r.lambda >= printed - 1e-12);
        CHECK(r.residual <= 1e-10);
    }
    CHECK(solve_lambda(1.0).lambda == 1.0);
}

TEST_CASE("bounds bracket lambda")
{
    const double L2 = std::log(2.0);
    const auto [l1, u1] = lambda_bounds(1.0);
    CHECK(l1 == doctest::Approx(kExpMinusGamma * (1.0 + kExpMinusGamma * L2 - 0.16)));
    CHECK(u1 == doctest::Approx(kExpMinusGamma * (1.0 + kExpMinusGamma * L2 + L2 * L2)));
    CHECK(l1 < 1.0);
    CHECK(1.0 < u1);
    for (double a = 1.0; a <= 100.0; a += 0.5) {
        const auto [l, u] = lambda_bounds(a);
        REQUIRE(l < u);
    }
    for (int i = 0; i <= 90; ++i) {
        const double a = 1.0 + 0.1 * i;
        const auto r = solve_lambda(a);
        REQUIRE(r.l_a < r.lambda);
        REQUIRE(r.lambda < r.u_a);
        REQUIRE(r.mu_a == r.u_a + 1.0);
        REQUIRE(g_minus(a, -r.l_a) > 0.0);
        REQUIRE(g_plus(a, -r.u_a) < 0.0);
    }
}

TEST_CASE("sign change and monotone decrease")
{
    double prev = 2.0;
    for (auto [a, printed] : kPrinted) {
        const auto r = solve_lambda(a);
        REQUIRE(r.lambda < prev);
        prev = r.lambda;
        if (a > 1.0) {
            const SpectralFunction g(a);
            REQUIRE(g(-1.0) < 0.0);
            REQUIRE(g(0.0) > 0.0);
            REQUIRE(r.bracket_lo <= -r.lambda);
            REQUIRE(-r.lambda <= r.bracket_hi);
        }
    }
}

TEST_CASE("root is stable under a finer table")
{
    const BuchstabTable fine(5e-5, 25);
    for (double a : {1.5, 2.0, 5.0}) {
        CHECK(std::abs(solve_lambda(a).lambda - solve_lambda(a, fine).lambda) < 1e-8);
    }
}

TEST_CASE("majorant H")
{
    // fine-grid oracle for sigma = 0, a = 1: 1 + int_1^25 |omega'|
    const auto& table = default_buchstab();
    constexpr int kCells = 2'400'000;
    const double h = 24.0 / kCells;
    double sum = 0.0;
    for (int i = 0; i < kCells; ++i) {
        sum += std::abs(table.omega_prime(1.0 + (i + 0.5) * h));
    }
    CHECK(H_major(1.0, 0.0) == doctest::Approx(1.0 + sum * h).epsilon(1e-7));

    for (double a : {1.0, 2.0, 6.0}) {
        double prev = H_major(a, -3.0);
        for (double sigma = -2.5; sigma <= 10.0; sigma += 0.5) {
            const double v = H_major(a, sigma);
            REQUIRE(v > 0.0);
            REQUIRE(v < prev);
            prev = v;
        }
        CHECK(H_major(a, 60.0) < 1e-15);
        // a real zero has tau = 0 <= H
        CHECK(H_major(a, -solve_lambda(a).lambda) >= 0.0);
    }
}

TEST_CASE("zero-free segment")
{
    for (int a = 1; a <= 10; ++a) {
        const auto rep = zero_free_spot_check(a);
        INFO("a=" << a << " ratio=" << rep.max_ratio);
        CHECK(rep.passes);
        CHECK(rep.max_ratio < 0.98);
    }
    const SpectralFunction g5(5.0);
    const double mu5 = lambda_bounds(5.0).second + 1.0;
    CHECK(std::abs(g5.h(Complex(-mu5, 0.0))) / mu5 <= zero_free_spot_check(5.0).max_ratio);
    CHECK_THROWS_AS(zero_free_spot_check(11.0), std::domain_error);
    CHECK_THROWS_AS(zero_free_spot_check(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("half-plane constants")
{
    const auto c = half_plane_constants();
    CHECK(c.holds());
    CHECK(c.mu_1 == doctest::Approx(lambda_bounds(1.0).second + 1.0));
    CHECK(c.moment_small.hi < 0.5 / 2.1);
    CHECK(c.moment_large.hi < 0.21 / 1.2);
}
