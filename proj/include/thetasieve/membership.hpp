#ifndef THETASIEVE_MEMBERSHIP_HPP
#define THETASIEVE_MEMBERSHIP_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "thetasieve/theta.hpp"

namespace thetasieve {

// The first position where the chain breaks. For the prime chain, index j
// means p_{j+1} > theta(p_1^a_1 ... p_j^a_j) with j counted from 0; for the
// divisor chain, d_{j+1} > theta(d_j) with j counted from 1.
struct ChainViolation {
    std::size_t index;
    u64 value;
    ChainBound bound;
};

struct MembershipResult {
    bool member = true;
    std::optional<ChainViolation> witness;
};

MembershipResult chi_B(u64 n, const ThetaSpec& spec);
MembershipResult chi_D(u64 n, const ThetaSpec& spec);

// A member of the prime-chained set together with its tree data.
struct BTreeNode {
    u64 n;
    u64 p_max;  // P+(n), 1 at the root
    ChainBound theta_n;
};

inline constexpr double kMaxCountArgument = 9007199254740992.0;  // 2^53

/// Depth-first walk of the chained set up to x, starting at the root n = 1.
/// Children of n are n p^k with P+(n) < p <= min(theta(n), x/n); visited in
/// order of prime, then exponent.
void enumerate_B(double x, const ThetaSpec& spec, const std::function<void(const BTreeNode&)>& visit);

std::vector<u64> enumerate_B(double x, const ThetaSpec& spec);

/// B(x). With threads > 1 the forest below the root is shared out one
/// first-level subtree at a time; the total does not depend on threads.
u64 count_B(double x, const ThetaSpec& spec, unsigned threads = 1);

/// D(x), by scanning chi_D over 1..x.
u64 count_D(double x, const ThetaSpec& spec);

struct IdentityReport {
    bool holds = false;
    u64 floor_x = 0;
    u64 sum = 0;
    u64 terms = 0;
    // Largest summands (n, Phi(x/n, theta(n))), for diagnosing a mismatch.
    std::vector<std::pair<u64, u64>> largest_terms;
};

/// Checks floor(x) = sum over chained n <= x of Phi(x/n, theta(n)) exactly.
IdentityReport verify_identity(double x, const ThetaSpec& spec);

} // namespace thetasieve

#endif
