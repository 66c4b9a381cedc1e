#ifndef THETASIEVE_ARITH_HPP
#define THETASIEVE_ARITH_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "thetasieve/interval.hpp"

namespace thetasieve {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
    u64 prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending by prime; empty for n = 1.
using Factorization = std::vector<PrimePower>;

/// All primes p <= limit, by a segmented odd-only sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(u64 limit);

/// Process-wide table of the primes up to 10^6, built on first use.
std::span<const std::uint32_t> small_primes();
inline constexpr u64 kSmallPrimeLimit = 1'000'000;

/// pi(y) for y <= kSmallPrimeLimit, from the shared table.
u64 small_prime_pi(u64 y);

bool is_prime(u64 n);

/// Trial division by the shared prime table, then Miller-Rabin and Pollard
/// rho for any cofactor above 10^12.
Factorization factorize(u64 n);

u64 reconstruct(const Factorization& f);

u64 p_plus(u64 n);
ExtendedReal p_minus(u64 n);

std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);

/// sigma(n), the sum of divisors. Exact in 128 bits for every 64-bit n.
u128 divisor_sum(const Factorization& f);

/// Phi(x, y): number of 1 <= n <= x with smallest prime factor > y.
/// x is floored once on entry; y may be infinite.
u64 phi_count(double x, ExtendedReal y);

/// Integer form of phi_count; y is the largest excluded prime bound.
u64 phi_count_int(u64 x, u64 y);

/// Legendre recursion phi(x, a) with memoization, a = pi(y). Used above the
/// mark-off threshold; exposed so tests can compare both routes.
u64 phi_legendre(u64 x, u64 y);

inline constexpr u64 kPhiSieveLimit = 100'000'000;

inline constexpr double kMertensCrossover = 1.0e6;

/// Certified enclosure of prod_{p <= y} (1 - 1/p). Below the crossover the
/// product runs over sieved primes with outward rounding; above it, effective
/// bounds around e^{-gamma} / log y are used.
Interval mertens_product(double y, double crossover = kMertensCrossover);

/// Same, for a y known only through log y (y may exceed the double range).
Interval mertens_product_from_log(double log_y);

/// Effective-bound enclosure only (no exact product); requires y > 285.
Interval mertens_effective_bounds(double log_y);

} // namespace thetasieve

#endif
