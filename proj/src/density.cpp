#include "thetasieve/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>
#include <variant>
#include <sstream>

#include "thetasieve/buchstab.hpp"
#include "thetasieve/membership.hpp"

namespace thetasieve {

namespace {

constexpr double kLog285 = 5.6524891802686508;  // log 285, start of the effective bound

double to_double(const Rational& q)
{
    return boost::rational_cast<double>(q);
}

// Upper bound for prod_{p <= y} (1 - 1/p) in terms of L = log y, valid for
// y > 285 and decreasing in L.
double mertens_upper(double L)
{
    return kExpMinusGamma * (1.0 + 1.0 / (2.0 * L * L)) / L;
}

Interval term(const ChainBound& theta)
{
    if (theta.is_infinite()) {
        return Interval(0.0);
    }
    if (theta.is_huge()) {
        return mertens_product_from_log(theta.log());
    }
    return mertens_product(static_cast<double>(theta.floor()));
}

Interval upward(double hi)
{
    return Interval(0.0, round_up(hi * (1.0 + 1e-12)));
}

const Interval kUnbounded(0.0, std::numeric_limits<double>::infinity());

} // namespace

Interval L_partial(const ThetaSpec& spec, u64 N)
{
    if (N == 0) {
        throw std::invalid_argument("L_partial: N must be positive");
    }
    Interval sum(0.0);
    enumerate_B(static_cast<double>(N), normalize(spec),
                [&](const BTreeNode& node) {
                    if (!node.theta_n.is_infinite()) {
                        sum += term(node.theta_n) / static_cast<double>(node.n);
                    }
                });
    return sum;
}

Interval L_tail_bound(const ThetaSpec& spec, u64 N)
{
    if (N == 0) {
        throw std::invalid_argument("L_tail_bound: N must be positive");
    }
    const double n1 = static_cast<double>(N) + 1.0;
    const double n = static_cast<double>(N);
    return std::visit(
        [&](const auto& f) -> Interval {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, family::Infinity>) {
                return Interval(0.0);
            } else if constexpr (std::is_same_v<T, family::PowerOfTwo>) {
                // log theta(m) = m log 2 and sum_{m > N} 1/m^2 <= 1/N.
                const double L = n1 * std::numbers::ln2;
                if (L <= kLog285) {
                    return kUnbounded;
                }
                return upward(mertens_upper(L) * n1 / n);
            } else if constexpr (std::is_same_v<T, family::ExpPower>) {
                // log theta(m) = c m^a and sum_{m > N} m^{-1-a} <= 1/(a N^a).
                const double c = to_double(f.c);
                const double a = to_double(f.a);
                const double L = c * std::pow(n1, a);
                if (L <= kLog285) {
                    return kUnbounded;
                }
                return upward(kExpMinusGamma * (1.0 + 1.0 / (2.0 * L * L)) / (c * a * std::pow(n, a)));
            } else if constexpr (std::is_same_v<T, family::ExpLogPower>) {
                // log theta(m) = c (log 2m)^a and
                // sum_{m > N} 1/(m (log 2m)^a) <= (log 2N)^{1-a}/(a - 1).
                const double c = to_double(f.c);
                const double a = to_double(f.a);
                if (!(a > 1.0)) {
                    throw UnsupportedTail("L_tail_bound: exp(c (log 2n)^a) needs a > 1 for a convergent majorant");
                }
                const double L = c * std::pow(std::log(2.0 * n1), a);
                if (L <= kLog285) {
                    return kUnbounded;
                }
                const double sum = std::pow(std::log(2.0 * n), 1.0 - a) / (a - 1.0);
                return upward(kExpMinusGamma * (1.0 + 1.0 / (2.0 * L * L)) / c * sum);
            } else {
                throw UnsupportedTail("L_tail_bound: no tail majorant registered for theta = " + to_string(spec));
            }
        },
        spec.family);
}

DensityEstimate density_estimate(const ThetaSpec& spec, double target_width, u64 max_N)
{
    if (!(target_width >= 1e-5)) {
        throw std::invalid_argument("density_estimate: target width must be at least 1e-5");
    }
    // Fails early for families without a majorant.
    (void)L_tail_bound(spec, 1);
    DensityEstimate best;
    bool have_best = false;
    for (u64 N = 16; N <= max_N; N *= 2) {
        DensityEstimate est;
        est.theta = spec;
        est.cutoff_N = N;
        est.partial = L_partial(spec, N);
        est.tail = L_tail_bound(spec, N);
        est.L = est.partial + est.tail;
        est.density = 1.0 - est.L;
        if (est.L.width() <= target_width) {
            return est;
        }
        best = est;
        have_best = true;
    }
    std::ostringstream msg;
    msg << "density_estimate: width " << target_width << " not reached with N <= " << max_N;
    if (have_best) {
        msg << " (best L = " << best.L << " at N = " << best.cutoff_N << ")";
    }
    throw DensityBudgetExceeded(msg.str(), best);
}

std::vector<std::pair<double, double>> empirical_density(const ThetaSpec& spec, std::span<const double> xs,
                                                         unsigned threads)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (!(x >= 1.0)) {
            throw std::invalid_argument("empirical_density: x must be at least 1");
        }
        out.emplace_back(x, static_cast<double>(count_B(x, spec, threads)) / x);
    }
    return out;
}

} // namespace thetasieve
