#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thetasieve/lambda.hpp"
#include "thetasieve/volterra.hpp"

using namespace thetasieve;
using boost::math::quadrature::gauss_kronrod;

namespace {

double omega_low(double u)
{
    if (u < 1.0) {
        return 0.0;
    }
    return u < 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
}

// While z <= 2 log(a+1), F = 1 under the integral, so
// F(z) = 1 - (1/a) int_{log(a+1)}^z omega((e^v - 1)/a) dv.
double first_window(double a, double z)
{
    const double d = std::log1p(a);
    auto f = [&](double v) { return omega_low(std::expm1(v) / a); };
    return 1.0 - gauss_kronrod<double, 61>::integrate(f, d, z, 10, 1e-14) / a;
}

} // namespace

TEST_CASE("rescaled kernel")
{
    CHECK(omega_cap(1.0, 0.5) == 0.0);
    CHECK(omega_cap(1.0, std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega_cap(2.0, std::log(3.0)) == doctest::Approx(1.0).epsilon(1e-14));
    const double u = std::log(2.0 * 2.0 + 1.0);
    CHECK(omega_cap(2.0, u) == doctest::Approx(omega(2.0)).epsilon(1e-14));
    CHECK(omega_cap(2.0, 1.5) == doctest::Approx(omega_low(std::expm1(1.5) / 2.0)).epsilon(1e-12));
    CHECK(omega_cap(3.0, 20.0) == doctest::Approx(kExpMinusGamma).epsilon(1e-14));
    CHECK_THROWS_AS(omega_cap(0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(omega_cap(1.0, -0.1), std::domain_error);
}

TEST_CASE("initial plateau is exact")
{
    for (double a : {1.0, 1.5, 2.0, 5.0}) {
        const auto grid = solve_F(a);
        const double d = std::log1p(a);
        for (std::size_t k = 0; grid.z(k) <= d; ++k) {
            REQUIRE(grid.values[k] == 1.0);
        }
        CHECK(grid.at(0.0) == 1.0);
        CHECK(grid.at(0.5 * d) == 1.0);
    }
}

TEST_CASE("solution on the first window")
{
    for (double a : {1.0, 2.0, 5.0}) {
        const auto grid = solve_F(a, 1e-3, 6.0);
        const double d = std::log1p(a);
        // stay where omega_low is valid
        const double z_end = std::min(2.0 * d, std::log1p(3.0 * a));
        for (double z = d + 0.01; z < z_end; z += 0.037) {
            INFO("a=" << a << " z=" << z);
            REQUIRE(grid.at(z) == doctest::Approx(first_window(a, z)).epsilon(2e-6));
        }
    }
}

TEST_CASE("positive and decreasing")
{
    for (double a : {1.0, 2.0, 5.0}) {
        const auto grid = solve_F(a);
        for (std::size_t k = 1; k < grid.values.size(); ++k) {
            REQUIRE(grid.values[k] > 0.0);
            REQUIRE(grid.values[k] <= grid.values[k - 1]);
        }
    }
}

TEST_CASE("step halving")
{
    const auto coarse = solve_F(2.0, 2e-3, 12.0);
    const auto fine = solve_F(2.0, 1e-3, 12.0);
    for (double z = 0.0; z <= 12.0; z += 0.25) {
        REQUIRE(std::abs(coarse.at(z) - fine.at(z)) < 1e-6);
    }
}

TEST_CASE("decay rate matches the spectral root")
{
    for (double a : {1.0, 1.5, 2.0, 5.0}) {
        const auto fit = decay_fit(solve_F(a));
        const double lambda = solve_lambda(a).lambda;
        INFO("a=" << a << " fit=" << fit.lambda_hat << " root=" << lambda);
        CHECK(std::abs(fit.lambda_hat - lambda) / lambda <= 0.01);
        CHECK(fit.c_hat > 0.0);
        CHECK(fit.max_residual < 1e-2);
    }
    const auto w = decay_fit(solve_F(2.0), std::pair{8.0, 12.0});
    CHECK(w.z1 == 8.0);
    CHECK(w.z2 == 12.0);
    CHECK(std::abs(w.lambda_hat - solve_lambda(2.0).lambda) < 5e-3);
}

TEST_CASE("fit recovers a synthetic exponential")
{
    FaGrid g{1.0, 1e-2, 10.0, {}};
    for (int k = 0; k <= 1000; ++k) {
        g.values.push_back(0.7 * std::exp(-0.3 * k * 1e-2));
    }
    const auto fit = decay_fit(g);
    CHECK(fit.lambda_hat == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(fit.c_hat == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(fit.z1 == doctest::Approx(5.0));
    CHECK(fit.z2 == doctest::Approx(8.0));

    g.values[600] = -1.0;
    CHECK_THROWS_AS(decay_fit(g), std::runtime_error);
    CHECK_THROWS_AS(decay_fit(g, std::pair{3.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(decay_fit(g, std::pair{1.0, 11.0}), std::invalid_argument);
}

TEST_CASE("solver arguments")
{
    CHECK_THROWS_AS(solve_F(0.9), std::domain_error);
    CHECK_THROWS_AS(solve_F(2.0, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(solve_F(2.0, 1e-3, 31.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_F(2.0).at(16.0), std::out_of_range);
}

TEST_CASE("empirical exponents")
{
    const std::vector<double> xs{1e4, 1e5, 1e6, 1e7};
    CHECK(empirical_exponent(parse_theta("inf"), xs).slope == doctest::Approx(0.0));

    // theta(n) = 2n behaves like a = 1, lambda = 1
    const std::vector<double> wide{1e4, 1e5, 1e6, 1e7, 1e8};
    const auto lin = empirical_exponent(parse_theta("linear:2"), wide);
    CHECK(std::abs(lin.slope + 1.0) <= 0.15);
    CHECK(lin.points.size() == 5);

    // n^2 + 1 is a = 2
    const auto sq = empirical_exponent(parse_theta("table:n^2+1:10000000"), xs);
    CHECK(std::abs(sq.slope + solve_lambda(2.0).lambda) <= 0.15);

    const std::vector<double> one{1e4};
    CHECK_THROWS_AS(empirical_exponent(parse_theta("inf"), one), std::invalid_argument);
    const std::vector<double> tiny{2.0, 1e3};
    CHECK_THROWS_AS(empirical_exponent(parse_theta("inf"), tiny), std::invalid_argument);
}
