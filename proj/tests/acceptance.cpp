// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>
#include <string>
#include <utility>
#include <vector>

#include "thetasieve/buchstab.hpp"
#include "thetasieve/density.hpp"
#include "thetasieve/lambda.hpp"
#include "thetasieve/membership.hpp"
#include "thetasieve/volterra.hpp"

using namespace thetasieve;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) {
                note << " first failure: " << what;
            }
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.note << " exception: " << e.what();
    }
    std::printf("%s %d %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", id, title, seconds_since(t0), o.note.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

std::string str(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

int main()
{
    criterion(1, "table of decay exponents", [](Outcome& o) {
        const std::vector<std::pair<double, double>> printed{
            {1.0, 1.0},     {1.1, 0.8854},  {1.2, 0.7927},  {1.3, 0.7164},  {1.4, 0.6526},   {1.5, 0.5985},
            {1.6, 0.5522},  {1.7, 0.5122},  {1.8, 0.4772},  {1.9, 0.4464},  {2.0, 0.4191},   {2.5, 0.3195},
            {3.0, 0.2567},  {3.5, 0.2139},  {4.0, 0.1829},  {4.5, 0.1595},  {5.0, 0.1412},   {6.0, 0.1147},
            {7.0, 0.09639}, {8.0, 0.08301}, {9.0, 0.07283}, {10.0, 0.06484}};
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (auto [a, value] : printed) {
            const double lambda = solve_lambda(a).lambda;
            worst = std::max(worst, std::abs(lambda - value));
            o.require(std::abs(lambda - value) <= 5e-4, "a=" + str(a) + " lambda=" + str(lambda));
        }
        const double t = seconds_since(t0);
        o.require(t <= 60.0, "runtime " + str(t) + " s");
        o.note << " max |diff|=" << worst;
    });

    criterion(2, "exact root at a = 1", [](Outcome& o) {
        const double r = std::abs(g_eval(1.0, -1.0));
        o.require(r <= 1e-9, "|g_1(-1)|=" + str(r));
        o.require(solve_lambda(1.0).lambda == 1.0, "solve_lambda(1) != 1");
        o.note << " |g_1(-1)|=" << r;
    });

    criterion(3, "bounds contain lambda_a", [](Outcome& o) {
        for (int i = 0; i <= 90; ++i) {
            const double a = 1.0 + 0.1 * i;
            const auto r = solve_lambda(a);
            o.require(r.l_a < r.lambda && r.lambda < r.u_a, "containment at a=" + str(a));
            o.require(g_minus(a, -r.l_a) > 0.0, "g-(-l_a) at a=" + str(a));
            o.require(g_plus(a, -r.u_a) < 0.0, "g+(-u_a) at a=" + str(a));
        }
    });

    criterion(4, "density for theta(n) = 2^n", [](Outcome& o) {
        const auto t0 = Clock::now();
        const auto est = density_estimate(parse_theta("2^n"), 1e-3);
        const double t = seconds_since(t0);
        o.require(est.density.width() <= 1e-3, "width " + str(est.density.width()));
        o.require(est.density.contains(0.2265), "density misses 0.2265");
        o.require(est.L.contains(0.7734), "L misses 0.7734");
        o.require(t <= 300.0, "runtime " + str(t) + " s");
        o.note << " L=[" << est.L.lo << ", " << est.L.hi << "] N=" << est.cutoff_N;
    });

    criterion(5, "exact counting identity", [](Outcome& o) {
        for (const char* text : {"linear:2", "sigma+1", "n+1", "2^n"}) {
            const auto spec = parse_theta(text);
            for (double x : {10.0, 1e2, 1e3, 1e4, 1e5}) {
                const auto r = verify_identity(x, spec);
                o.require(r.holds && r.sum == r.floor_x, std::string(text) + " x=" + str(x));
            }
        }
    });

    criterion(6, "divisor chains against prime chains", [](Outcome& o) {
        for (const auto& spec : builtin_specs()) {
            for (u64 n = 1; n <= 10'000; ++n) {
                if (chi_D(n, spec).member && !chi_B(n, spec).member) {
                    o.require(false, to_string(spec) + " n=" + std::to_string(n));
                }
            }
        }
        for (const char* text : {"linear:2", "2^n", "table:n^2+1:100000"}) {
            const auto spec = parse_theta(text);
            for (u64 n = 1; n <= 10'000; ++n) {
                if (chi_D(n, spec).member != chi_B(n, spec).member) {
                    o.require(false, std::string(text) + " differs at n=" + std::to_string(n));
                }
            }
        }
        const auto next = parse_theta("n+1");
        std::vector<u64> members;
        for (u64 n = 1; n <= 10'000; ++n) {
            if (chi_D(n, next).member) {
                members.push_back(n);
            }
        }
        o.require(members == std::vector<u64>{1, 2}, "D for n+1 is not {1, 2}");
    });

    criterion(7, "Buchstab function bounds", [](Outcome& o) {
        double worst_gap = -1.0;
        for (int i = 0; i <= 1900; ++i) {
            const double u = 1.0 + 0.01 * i;
            const double g = gamma_reciprocal(u);
            const double d0 = std::abs(omega(u) - kExpMinusGamma) - g;
            const double d1 = std::abs(omega_prime(u)) - g;
            worst_gap = std::max({worst_gap, d0, d1});
            o.require(d0 <= 1e-9, "omega bound at u=" + str(u));
            o.require(d1 <= 1e-9, "omega' bound at u=" + str(u));
        }
        double worst_closed = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double u = 1.0 + 0.001 * i;
            const double exact = u < 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
            worst_closed = std::max(worst_closed, std::abs(omega(u) - exact));
        }
        o.require(worst_closed <= 1e-9, "closed form on [1, 3]");
        o.note << " closed-form error=" << worst_closed;
    });

    criterion(8, "deviation integrals and zero-free segment", [](Outcome& o) {
        const auto i0 = deviation_integral(1.0, 0.0);
        const auto ig = deviation_integral(kExpGamma, 0.0);
        const auto i1 = deviation_integral(1.0, 0.1);
        o.require(i0.hi < 0.16, "int_1 |omega - e^-gamma| = " + str(i0.hi));
        o.require(ig.hi <= 0.021, "int_{e^gamma} |omega - e^-gamma| = " + str(ig.hi));
        o.require(i1.hi < 0.175, "int_1 |omega - e^-gamma| t^0.1 = " + str(i1.hi));
        double worst = 0.0;
        for (int a = 1; a <= 10; ++a) {
            const auto z = zero_free_spot_check(a);
            worst = std::max(worst, z.max_ratio);
            o.require(z.passes, "segment ratio at a=" + std::to_string(a));
        }
        o.note << " integrals " << i0.hi << ", " << ig.hi << ", " << i1.hi << "; max ratio " << worst;
    });

    criterion(9, "integral equation decay", [](Outcome& o) {
        for (double a : {1.0, 1.5, 2.0, 5.0}) {
            const auto grid = solve_F(a);
            const double lambda = solve_lambda(a).lambda;
            const double rel = std::abs(decay_fit(grid).lambda_hat - lambda) / lambda;
            o.require(rel <= 0.01, "a=" + str(a) + " relative error " + str(rel));
            const double d = std::log1p(a);
            for (std::size_t k = 0; grid.z(k) <= d; ++k) {
                if (grid.values[k] != 1.0) {
                    o.require(false, "F != 1 on the plateau at a=" + str(a));
                    break;
                }
            }
            o.note << " a=" << a << ":" << rel;
        }
    });

    criterion(10, "counting at 1e8", [](Outcome& o) {
        const auto spec = parse_theta("linear:2");
        u64 scan = 0;
        for (u64 n = 1; n <= 1'000'000; ++n) {
            scan += chi_B(n, spec).member;
        }
        o.require(count_B(1e6, spec) == scan, "count at 1e6 differs from the scan");
        const auto t0 = Clock::now();
        const u64 big = count_B(1e8, spec, std::max(1u, std::thread::hardware_concurrency()));
        const double t = seconds_since(t0);
        o.require(t <= 300.0, "runtime " + str(t) + " s");
        o.require(big >= scan, "count at 1e8 below the prefix count");
        const std::vector<double> xs{1e4, 1e5, 1e6, 1e7, 1e8};
        const double slope = empirical_exponent(spec, xs).slope;
        o.require(std::abs(slope + 1.0) <= 0.15, "indicative slope " + str(slope));
        o.note << " B(1e8)=" << big << " in " << t << " s; slope " << slope;
    });

    return failures == 0 ? 0 : 1;
}
