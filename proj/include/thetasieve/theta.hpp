#ifndef THETASIEVE_THETA_HPP
#define THETASIEVE_THETA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "thetasieve/arith.hpp"

namespace thetasieve {

using Rational = boost::rational<std::int64_t>;

// Threshold-function families. Each is a value type; parameters are exact
// rationals so chain comparisons never depend on floating-point rounding.
namespace family {

struct Linear {  // t * n
    Rational t;
    friend bool operator==(const Linear&, const Linear&) = default;
};
struct SigmaPlusOne {  // sigma(n) + 1
    friend bool operator==(const SigmaPlusOne&, const SigmaPlusOne&) = default;
};
struct NPlusOne {  // n + 1
    friend bool operator==(const NPlusOne&, const NPlusOne&) = default;
};
struct PowerOfTwo {  // 2^n
    friend bool operator==(const PowerOfTwo&, const PowerOfTwo&) = default;
};
struct MonomialPower {  // c * n^a, c > 0, a >= 1
    Rational c;
    Rational a;
    friend bool operator==(const MonomialPower&, const MonomialPower&) = default;
};
struct ExpPower {  // exp(c * n^a), c > 0, a > 0
    Rational c;
    Rational a;
    friend bool operator==(const ExpPower&, const ExpPower&) = default;
};
struct ExpLogPower {  // exp(c * (log 2n)^a), c > 0, a > 0
    Rational c;
    Rational a;
    friend bool operator==(const ExpLogPower&, const ExpLogPower&) = default;
};
struct Infinity {
    friend bool operator==(const Infinity&, const Infinity&) = default;
};

// Finite table theta(1..size); beyond the table theta(n) = P+(n).
// Entries are integers, nullopt standing for infinity. The square_plus_one
// rule generates n^2 + 1 on demand instead of storing the entries.
struct TableBacked {
    enum class Rule { explicit_values, square_plus_one };
    Rule rule = Rule::explicit_values;
    u64 size = 0;
    std::vector<std::optional<u64>> values;

    friend bool operator==(const TableBacked&, const TableBacked&) = default;
};

} // namespace family

using Family = std::variant<family::Linear, family::SigmaPlusOne, family::NPlusOne, family::PowerOfTwo,
                            family::MonomialPower, family::ExpPower, family::ExpLogPower, family::Infinity,
                            family::TableBacked>;

struct ThetaSpec {
    Family family;
    // max(theta(n), P+(n)) is applied on evaluation.
    bool normalized = false;
    // theta(1) < 2, so the chained set is {1}.
    bool trivial = false;

    friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;
};

// The value theta(n) as seen by chain comparisons against integers. Holds the
// exact floor when it fits in 64 bits; larger values are kept only through
// their logarithm, which is all the comparisons and Euler products need.
class ChainBound {
public:
    static ChainBound infinite();
    static ChainBound integer(u64 v);
    // A non-integral finite value in (floor, floor + 1).
    static ChainBound fractional(u64 floor, double log_value);
    // Any value >= 2^64; pow2 records an exact power-of-two exponent.
    static ChainBound huge(double log_value, std::optional<u64> pow2 = std::nullopt);

    bool is_infinite() const { return kind_ == Kind::infinite; }
    bool is_huge() const { return kind_ == Kind::huge; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_integral() const { return kind_ == Kind::finite && integral_; }

    // Exact decision of m <= theta(n).
    bool admits(u64 m) const { return kind_ != Kind::finite || m <= floor_; }

    // min(floor(theta(n)), limit).
    u64 cap(u64 limit) const { return kind_ == Kind::finite ? std::min(floor_, limit) : limit; }

    u64 floor() const { return floor_; }
    double log() const { return log_; }
    std::optional<u64> pow2_exponent() const { return pow2_; }

    // max(theta, v) for an integer v.
    ChainBound at_least(u64 v) const;

    std::string to_string() const;

    friend bool operator==(const ChainBound&, const ChainBound&) = default;

private:
    enum class Kind : std::uint8_t { finite, huge, infinite };
    Kind kind_ = Kind::finite;
    bool integral_ = true;
    u64 floor_ = 0;
    double log_ = 0.0;
    std::optional<u64> pow2_;
};

ChainBound theta_eval(const ThetaSpec& spec, u64 n);

// Variant for callers that already know P+(n); skips the factorization the
// normalized form would otherwise need.
ChainBound theta_eval(const ThetaSpec& spec, u64 n, u64 largest_prime_factor);

ThetaSpec normalize(ThetaSpec spec);

/// Finite check of theta(n) <= theta(n+1) and m theta(n) <= theta(mn) for
/// coprime m, n with mn <= limit. Evidence for the monotonicity condition,
/// not a proof of it.
bool check_chain_compat(const ThetaSpec& spec, u64 limit);

/// First violation found by check_chain_compat, as (m, n); m == 0 flags a
/// failure of theta(n) <= theta(n+1).
std::optional<std::pair<u64, u64>> find_chain_compat_violation(const ThetaSpec& spec, u64 limit);

/// Canonical text: "linear:2", "sigma+1", "n+1", "2^n", "pow:c:a",
/// "exp:c:a", "explog:c:a", "inf", "table:n^2+1:N", "table:v1,v2,...".
ThetaSpec parse_theta(std::string_view text);
std::string to_string(const ThetaSpec& spec);

ThetaSpec square_plus_one_table(u64 size);

/// The families exercised by the cross-check suites.
std::vector<ThetaSpec> builtin_specs();

} // namespace thetasieve

#endif
