#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "thetasieve/buchstab.hpp"
#include "thetasieve/density.hpp"
#include "thetasieve/membership.hpp"

using namespace thetasieve;

TEST_CASE("partial sums")
{
    const auto pow2 = parse_theta("2^n");
    CHECK(L_partial(pow2, 1).contains(0.5));
    CHECK(L_partial(pow2, 1).width() < 1e-15);
    // n = 2 adds (1/2)(1/2)(2/3)
    CHECK(L_partial(pow2, 2).contains(0.5 + 1.0 / 6.0));
    CHECK(L_partial(parse_theta("inf"), 1000).hi == 0.0);

    double prev = 0.0;
    for (u64 N = 1; N <= 4096; N *= 2) {
        const auto p = L_partial(pow2, N);
        REQUIRE(p.lo >= prev);
        prev = p.lo;
    }
    CHECK_THROWS_AS(L_partial(pow2, 0), std::invalid_argument);
}

TEST_CASE("partial sum against a long double evaluation")
{
    // Products over p <= 2^19 from a plain sieve.
    constexpr u64 kMax = 1u << 19;
    std::vector<bool> composite(kMax + 1, false);
    std::vector<long double> prod(kMax + 1, 1.0L);
    long double running = 1.0L;
    for (u64 k = 2; k <= kMax; ++k) {
        if (!composite[k]) {
            running *= 1.0L - 1.0L / k;
            for (u64 m = k * k; m <= kMax; m += k) {
                composite[m] = true;
            }
        }
        prod[k] = running;
    }
    const auto pow2 = parse_theta("2^n");
    long double sum = 0.0L;
    for (u64 n = 1; n <= 19; ++n) {
        if (chi_B(n, pow2).member) {
            sum += prod[u64{1} << n] / n;
        }
    }
    const auto p = L_partial(pow2, 19);
    CHECK(p.contains(static_cast<double>(sum)));
    CHECK(p.width() < 1e-13);
}

TEST_CASE("tail majorants")
{
    const double g = kExpMinusGamma;
    for (u64 N : {64u, 1024u, 100000u}) {
        const double L = (N + 1.0) * std::numbers::ln2;
        const double expected = g * (1.0 + 1.0 / (2.0 * L * L)) / (std::numbers::ln2 * N);
        const auto t = L_tail_bound(parse_theta("2^n"), N);
        CHECK(t.lo == 0.0);
        CHECK(t.hi >= expected);
        CHECK(t.hi == doctest::Approx(expected).epsilon(1e-10));
    }
    // log 2^8 < log 285 so no bound yet
    CHECK(std::isinf(L_tail_bound(parse_theta("2^n"), 7).hi));

    {
        const u64 N = 100;
        const double L = std::pow(N + 1.0, 1.5);
        const double expected = g * (1.0 + 1.0 / (2.0 * L * L)) / (1.5 * std::pow(N, 1.5));
        CHECK(L_tail_bound(parse_theta("exp:1:3/2"), N).hi == doctest::Approx(expected).epsilon(1e-10));
    }
    {
        const u64 N = 1000;
        const double L = 3.0 * std::pow(std::log(2.0 * (N + 1.0)), 2.0);
        const double expected = g * (1.0 + 1.0 / (2.0 * L * L)) / 3.0 * std::pow(std::log(2.0 * N), -1.0);
        CHECK(L_tail_bound(parse_theta("explog:3:2"), N).hi == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(L_tail_bound(parse_theta("inf"), 5).hi == 0.0);
    CHECK_THROWS_AS(L_tail_bound(parse_theta("linear:2"), 100), UnsupportedTail);
    CHECK_THROWS_AS(L_tail_bound(parse_theta("sigma+1"), 100), UnsupportedTail);
    CHECK_THROWS_AS(L_tail_bound(parse_theta("explog:1:1"), 100), UnsupportedTail);
}

TEST_CASE("density of the power-of-two chain")
{
    const auto est = density_estimate(parse_theta("2^n"), 1e-3);
    CHECK(est.L.width() <= 1e-3);
    CHECK(est.L.contains(0.7734));
    CHECK(est.density.contains(0.2265));
    CHECK(est.density.lo == doctest::Approx(1.0 - est.L.hi).epsilon(1e-14));
    CHECK(est.L.lo >= 0.0);
    CHECK(est.L.hi <= 1.0);

    // a tighter target nests inside the looser one
    const auto tight = density_estimate(parse_theta("2^n"), 1e-4);
    CHECK(tight.L.lo >= est.L.lo);
    CHECK(tight.L.hi <= est.L.hi);
    CHECK(tight.cutoff_N > est.cutoff_N);
}

TEST_CASE("density of the unrestricted chain is one")
{
    const auto est = density_estimate(parse_theta("inf"), 1e-3);
    // exact zero up to outward rounding
    CHECK(est.L.hi < 1e-300);
    CHECK(est.density.contains(1.0));
    CHECK(est.density.width() < 1e-15);
}

TEST_CASE("density errors")
{
    CHECK_THROWS_AS(density_estimate(parse_theta("2^n"), 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(density_estimate(parse_theta("linear:2"), 1e-3), UnsupportedTail);
    try {
        density_estimate(parse_theta("2^n"), 1e-5, 64);
        FAIL("expected the budget to run out");
    } catch (const DensityBudgetExceeded& e) {
        CHECK(e.best().cutoff_N == 64);
        CHECK(e.best().L.contains(0.7734));
    }
}

TEST_CASE("empirical density drifts toward the certified value")
{
    const std::vector<double> xs{1e4, 1e5, 1e6};
    const auto pts = empirical_density(parse_theta("2^n"), xs);
    REQUIRE(pts.size() == 3);
    for (const auto& [x, d] : pts) {
        CHECK(d > 0.2);
        CHECK(d < 0.3);
    }
    // convergence is slow; only ask for steady approach
    CHECK(std::abs(pts[2].second - 0.2265) < std::abs(pts[0].second - 0.2265));
    CHECK(std::abs(pts[2].second - 0.2265) < 0.02);
    const auto all = empirical_density(parse_theta("inf"), xs);
    for (const auto& [x, d] : all) {
        CHECK(d == 1.0);
    }
    const std::vector<double> bad{0.5};
    CHECK_THROWS_AS(empirical_density(parse_theta("inf"), bad), std::invalid_argument);
}
