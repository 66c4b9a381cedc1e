#ifndef THETASIEVE_DENSITY_HPP
#define THETASIEVE_DENSITY_HPP

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "thetasieve/interval.hpp"
#include "thetasieve/theta.hpp"

namespace thetasieve {

/// Enclosure of L = sum over chained n of (1/n) prod_{p <= theta(n)} (1 - 1/p)
/// split at a cutoff N, and the resulting density 1 - L.
struct DensityEstimate {
    ThetaSpec theta;
    u64 cutoff_N = 0;
    Interval partial;
    Interval tail;
    Interval L;
    Interval density;
};

class UnsupportedTail : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DensityBudgetExceeded : public std::runtime_error {
public:
    DensityBudgetExceeded(const std::string& what, DensityEstimate best)
        : std::runtime_error(what), best_(std::move(best))
    {
    }
    const DensityEstimate& best() const { return best_; }

private:
    DensityEstimate best_;
};

/// Sum over chained n <= N. The spec is normalized first.
Interval L_partial(const ThetaSpec& spec, u64 N);

/// [0, hi] with hi bounding the terms n > N. Majorants exist for 2^n,
/// exp(c n^a), exp(c (log 2n)^a) with a > 1, and theta = inf; anything else
/// throws UnsupportedTail. While N is too small for the effective Mertens
/// bound the upper end is +inf.
Interval L_tail_bound(const ThetaSpec& spec, u64 N);

/// Doubles N from 16 until the width of L is at most target_width.
DensityEstimate density_estimate(const ThetaSpec& spec, double target_width, u64 max_N = 10'000'000);

/// (x, B(x)/x) for each x.
std::vector<std::pair<double, double>> empirical_density(const ThetaSpec& spec, std::span<const double> xs,
                                                         unsigned threads = 1);

} // namespace thetasieve

#endif
