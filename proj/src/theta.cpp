#include "thetasieve/theta.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace thetasieve {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRational = mp::cpp_rational;
using BigFloat = mp::cpp_bin_float_50;

namespace {

constexpr u64 kU64Max = std::numeric_limits<u64>::max();
const double kLog2 = std::log(2.0);

template <class Float>
Float to_float(const Rational& r)
{
    return Float(r.numerator()) / Float(r.denominator());
}

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// floor(exp(v)) for a transcendental exponent; escalates precision when the
// fractional part sits too close to an integer to be trusted.
template <class Float>
std::optional<ChainBound> floor_exp(const Float& v, double tie_eps)
{
    if (v > 45) {
        return ChainBound::huge(static_cast<double>(v));
    }
    const Float e = mp::exp(v);
    if (e >= mp::ldexp(Float(1), 64)) {
        return ChainBound::huge(static_cast<double>(v));
    }
    const Float f = mp::floor(e);
    const Float frac = e - f;
    if (frac < tie_eps || frac > 1 - Float(tie_eps)) {
        return std::nullopt;
    }
    return ChainBound::fractional(static_cast<u64>(f), static_cast<double>(v));
}

template <class LogFn>
ChainBound transcendental_bound(LogFn log_value)
{
    if (auto b = floor_exp<BigFloat>(log_value.template operator()<BigFloat>(), 1e-40)) {
        return *b;
    }
    using Wide = mp::cpp_bin_float_100;
    if (auto b = floor_exp<Wide>(log_value.template operator()<Wide>(), 1e-90)) {
        return *b;
    }
    throw std::runtime_error("theta_eval: cannot separate exp value from an integer");
}

ChainBound linear_bound(const family::Linear& f, u64 n)
{
    const u128 num = static_cast<u128>(static_cast<u64>(f.t.numerator())) * n;
    const u64 den = static_cast<u64>(f.t.denominator());
    const u128 fl = num / den;
    const double logv = std::log(to_double(f.t)) + std::log(static_cast<double>(n));
    if (fl > kU64Max) {
        return ChainBound::huge(logv);
    }
    if (num % den == 0) {
        return ChainBound::integer(static_cast<u64>(fl));
    }
    return ChainBound::fractional(static_cast<u64>(fl), logv);
}

ChainBound monomial_bound(const family::MonomialPower& f, u64 n)
{
    const auto r = f.c.numerator();
    const auto s = f.c.denominator();
    const auto u = static_cast<unsigned>(f.a.numerator());
    const auto v = static_cast<unsigned>(f.a.denominator());
    const double logv = std::log(to_double(f.c)) + to_double(f.a) * std::log(static_cast<double>(n));

    // value <= m  <=>  r^v n^u <= s^v m^v
    const BigInt rhs = mp::pow(BigInt(r), v) * mp::pow(BigInt(n), u);
    const BigInt sv = mp::pow(BigInt(s), v);
    auto le = [&](const BigInt& m) { return sv * mp::pow(m, v) <= rhs; };  // m <= value

    if (le(BigInt(1) << 64)) {
        return ChainBound::huge(logv);
    }
    const long double est = static_cast<long double>(r) / static_cast<long double>(s)
                            * std::pow(static_cast<long double>(n), static_cast<long double>(u) / v);
    BigInt m = est >= 1.8e19L ? BigInt(kU64Max) : BigInt(static_cast<u64>(est));
    while (m > 0 && !le(m)) {
        --m;
    }
    while (m < kU64Max && le(m + 1)) {
        ++m;
    }
    const bool exact = sv * mp::pow(m, v) == rhs;
    const u64 fl = static_cast<u64>(m);
    return exact ? ChainBound::integer(fl) : ChainBound::fractional(fl, logv);
}

ChainBound table_bound(const family::TableBacked& f, u64 n, u64 largest_prime_factor)
{
    if (n > f.size) {
        return ChainBound::integer(largest_prime_factor);
    }
    if (f.rule == family::TableBacked::Rule::square_plus_one) {
        return ChainBound::integer(n * n + 1);
    }
    const auto& v = f.values[n - 1];
    return v ? ChainBound::integer(*v) : ChainBound::infinite();
}

u64 lazy_p_plus(u64 n, std::optional<u64> hint) { return hint ? *hint : p_plus(n); }

ChainBound raw_eval(const ThetaSpec& spec, u64 n, std::optional<u64> hint)
{
    return std::visit(
        [&](const auto& f) -> ChainBound {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::Linear>) {
                return linear_bound(f, n);
            } else if constexpr (std::is_same_v<F, family::SigmaPlusOne>) {
                const u128 v = divisor_sum(factorize(n)) + 1;
                if (v > kU64Max) {
                    return ChainBound::huge(std::log(static_cast<double>(v)));
                }
                return ChainBound::integer(static_cast<u64>(v));
            } else if constexpr (std::is_same_v<F, family::NPlusOne>) {
                if (n == kU64Max) {
                    return ChainBound::huge(std::log(static_cast<double>(n)));
                }
                return ChainBound::integer(n + 1);
            } else if constexpr (std::is_same_v<F, family::PowerOfTwo>) {
                if (n < 64) {
                    return ChainBound::integer(u64{1} << n);
                }
                return ChainBound::huge(static_cast<double>(n) * kLog2, n);
            } else if constexpr (std::is_same_v<F, family::MonomialPower>) {
                return monomial_bound(f, n);
            } else if constexpr (std::is_same_v<F, family::ExpPower>) {
                return transcendental_bound([&]<class Float>() {
                    return to_float<Float>(f.c) * mp::exp(to_float<Float>(f.a) * mp::log(Float(n)));
                });
            } else if constexpr (std::is_same_v<F, family::ExpLogPower>) {
                return transcendental_bound([&]<class Float>() {
                    const Float l = mp::log(Float(2) * Float(n));
                    return to_float<Float>(f.c) * mp::exp(to_float<Float>(f.a) * mp::log(l));
                });
            } else if constexpr (std::is_same_v<F, family::Infinity>) {
                return ChainBound::infinite();
            } else {
                if (n > f.size) {
                    return ChainBound::integer(lazy_p_plus(n, hint));
                }
                return table_bound(f, n, 0);
            }
        },
        spec.family);
}

ChainBound eval_impl(const ThetaSpec& spec, u64 n, std::optional<u64> hint)
{
    if (n == 0) {
        throw std::invalid_argument("theta_eval: n must be positive");
    }
    ChainBound b = raw_eval(spec, n, hint);
    // P+(n) <= n, so values >= n never change under normalization.
    if (spec.normalized && n >= 2 && b.is_finite() && b.floor() < n) {
        b = b.at_least(lazy_p_plus(n, hint));
    }
    return b;
}

} // namespace

ChainBound ChainBound::infinite()
{
    ChainBound b;
    b.kind_ = Kind::infinite;
    b.log_ = std::numeric_limits<double>::infinity();
    return b;
}

ChainBound ChainBound::integer(u64 v)
{
    ChainBound b;
    b.floor_ = v;
    b.integral_ = true;
    b.log_ = v == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(v));
    return b;
}

ChainBound ChainBound::fractional(u64 floor, double log_value)
{
    ChainBound b;
    b.floor_ = floor;
    b.integral_ = false;
    b.log_ = log_value;
    return b;
}

ChainBound ChainBound::huge(double log_value, std::optional<u64> pow2)
{
    ChainBound b;
    b.kind_ = Kind::huge;
    b.floor_ = kU64Max;
    b.integral_ = pow2.has_value();
    b.log_ = log_value;
    b.pow2_ = pow2;
    return b;
}

ChainBound ChainBound::at_least(u64 v) const
{
    if (kind_ == Kind::finite && floor_ < v) {
        return integer(v);
    }
    return *this;
}

std::string ChainBound::to_string() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::infinite:
        return "inf";
    case Kind::huge:
        if (pow2_) {
            os << "2^" << *pow2_;
        } else {
            os.precision(17);
            os << "exp(" << log_ << ')';
        }
        return os.str();
    case Kind::finite:
        if (integral_) {
            os << floor_;
        } else {
            os.precision(17);
            os << std::exp(log_);
        }
        return os.str();
    }
    return {};
}

ChainBound theta_eval(const ThetaSpec& spec, u64 n) { return eval_impl(spec, n, std::nullopt); }

ChainBound theta_eval(const ThetaSpec& spec, u64 n, u64 largest_prime_factor)
{
    return eval_impl(spec, n, largest_prime_factor);
}

ThetaSpec normalize(ThetaSpec spec)
{
    spec.normalized = true;
    spec.trivial = !theta_eval(spec, 1).admits(2);
    return spec;
}

// ---------------------------------------------------------------------------
// Exact comparisons for the monotonicity check.

namespace {

// value = base^(1/root) * 2^shift, or known only through its logarithm.
struct ExactValue {
    enum class Kind { infinite, algebraic, transcendental };
    Kind kind = Kind::algebraic;
    BigRational base = 1;
    unsigned root = 1;
    u64 shift = 0;
    BigFloat log;
};

BigRational rpow(const BigRational& q, unsigned e)
{
    return BigRational(mp::pow(mp::numerator(q), e), mp::pow(mp::denominator(q), e));
}

ExactValue exact_integer(u64 v)
{
    ExactValue e;
    e.base = BigRational(v);
    return e;
}

BigFloat log_of(const ExactValue& v)
{
    return mp::log(BigFloat(v.base)) / v.root + BigFloat(v.shift) * mp::log(BigFloat(2));
}

ExactValue raw_exact(const ThetaSpec& spec, u64 n)
{
    return std::visit(
        [&](const auto& f) -> ExactValue {
            using F = std::decay_t<decltype(f)>;
            ExactValue e;
            if constexpr (std::is_same_v<F, family::Linear>) {
                e.base = BigRational(BigInt(f.t.numerator()) * n, BigInt(f.t.denominator()));
            } else if constexpr (std::is_same_v<F, family::SigmaPlusOne>) {
                const u128 s = divisor_sum(factorize(n)) + 1;
                e.base = BigRational((BigInt(static_cast<u64>(s >> 64)) << 64) + static_cast<u64>(s));
            } else if constexpr (std::is_same_v<F, family::NPlusOne>) {
                e.base = BigRational(BigInt(n) + 1);
            } else if constexpr (std::is_same_v<F, family::PowerOfTwo>) {
                e.shift = n;
            } else if constexpr (std::is_same_v<F, family::MonomialPower>) {
                const auto u = static_cast<unsigned>(f.a.numerator());
                const auto v = static_cast<unsigned>(f.a.denominator());
                e.base = rpow(BigRational(BigInt(f.c.numerator()), BigInt(f.c.denominator())), v)
                         * BigRational(mp::pow(BigInt(n), u));
                e.root = v;
            } else if constexpr (std::is_same_v<F, family::ExpPower>) {
                e.kind = ExactValue::Kind::transcendental;
                e.log = to_float<BigFloat>(f.c) * mp::exp(to_float<BigFloat>(f.a) * mp::log(BigFloat(n)));
            } else if constexpr (std::is_same_v<F, family::ExpLogPower>) {
                e.kind = ExactValue::Kind::transcendental;
                e.log = to_float<BigFloat>(f.c)
                        * mp::exp(to_float<BigFloat>(f.a) * mp::log(mp::log(BigFloat(2) * BigFloat(n))));
            } else if constexpr (std::is_same_v<F, family::Infinity>) {
                e.kind = ExactValue::Kind::infinite;
            } else {
                if (n > f.size) {
                    return exact_integer(p_plus(n));
                }
                if (f.rule == family::TableBacked::Rule::square_plus_one) {
                    e.base = BigRational(BigInt(n) * n + 1);
                } else if (const auto& v = f.values[n - 1]) {
                    e.base = BigRational(*v);
                } else {
                    e.kind = ExactValue::Kind::infinite;
                }
            }
            return e;
        },
        spec.family);
}

// Sign of m1 * a - m2 * b.
int compare_scaled(u64 m1, const ExactValue& a, u64 m2, const ExactValue& b)
{
    using K = ExactValue::Kind;
    if (a.kind == K::infinite || b.kind == K::infinite) {
        return (a.kind == K::infinite) - (b.kind == K::infinite);
    }
    if (a.kind == K::algebraic && b.kind == K::algebraic) {
        const unsigned l = std::lcm(a.root, b.root);
        // (m a)^l = m^l base^(l/root) 2^(shift l)
        BigRational x = rpow(BigRational(m1), l) * rpow(a.base, l / a.root);
        BigRational y = rpow(BigRational(m2), l) * rpow(b.base, l / b.root);
        if (a.shift != b.shift) {
            const u64 lo = std::min(a.shift, b.shift);
            const u64 da = (a.shift - lo) * l;
            const u64 db = (b.shift - lo) * l;
            // Decide by magnitude first so 2^(10^4)-sized shifts stay cheap.
            const auto bits = [](const BigRational& q) {
                return static_cast<long long>(mp::msb(mp::numerator(q))) - static_cast<long long>(mp::msb(mp::denominator(q)));
            };
            const long long ex = bits(x) + static_cast<long long>(da);
            const long long ey = bits(y) + static_cast<long long>(db);
            if (ex > ey + 2) {
                return 1;
            }
            if (ey > ex + 2) {
                return -1;
            }
            x *= BigRational(BigInt(1) << static_cast<unsigned>(da));
            y *= BigRational(BigInt(1) << static_cast<unsigned>(db));
        }
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    const BigFloat la = mp::log(BigFloat(m1)) + (a.kind == K::algebraic ? log_of(a) : a.log);
    const BigFloat lb = mp::log(BigFloat(m2)) + (b.kind == K::algebraic ? log_of(b) : b.log);
    const BigFloat d = la - lb;
    if (mp::abs(d) < BigFloat(1e-40)) {
        return 0;
    }
    return d < 0 ? -1 : 1;
}

ExactValue exact_eval(const ThetaSpec& spec, u64 n)
{
    ExactValue e = raw_exact(spec, n);
    if (spec.normalized && n >= 2) {
        const u64 p = p_plus(n);
        if (compare_scaled(1, e, 1, exact_integer(p)) < 0) {
            e = exact_integer(p);
        }
    }
    return e;
}

} // namespace

std::optional<std::pair<u64, u64>> find_chain_compat_violation(const ThetaSpec& spec, u64 limit)
{
    std::vector<ChainBound> fast(limit + 1);
    std::vector<std::optional<ExactValue>> exact(limit + 1);
    for (u64 n = 1; n <= limit; ++n) {
        fast[n] = theta_eval(spec, n);
    }
    auto exact_at = [&](u64 n) -> const ExactValue& {
        if (!exact[n]) {
            exact[n] = exact_eval(spec, n);
        }
        return *exact[n];
    };
    // m * theta(n) <= theta(k)
    auto scaled_le = [&](u64 m, u64 n, u64 k) {
        const ChainBound& a = fast[n];
        const ChainBound& b = fast[k];
        if (a.is_integral() && b.is_integral() && a.is_finite() && b.is_finite()) {
            return static_cast<u128>(m) * a.floor() <= b.floor();
        }
        if (b.is_infinite()) {
            return true;
        }
        if (a.is_infinite()) {
            return false;
        }
        return compare_scaled(m, exact_at(n), 1, exact_at(k)) <= 0;
    };

    for (u64 n = 1; n < limit; ++n) {
        if (!scaled_le(1, n, n + 1)) {
            return std::pair<u64, u64>{0, n};
        }
    }
    for (u64 n = 1; n <= limit / 2; ++n) {
        for (u64 m = 2; m * n <= limit; ++m) {
            if (std::gcd(m, n) == 1 && !scaled_le(m, n, m * n)) {
                return std::pair<u64, u64>{m, n};
            }
        }
    }
    return std::nullopt;
}

bool check_chain_compat(const ThetaSpec& spec, u64 limit)
{
    if (limit < 2) {
        throw std::invalid_argument("check_chain_compat: limit must be >= 2");
    }
    return !find_chain_compat_violation(spec, limit).has_value();
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

Rational parse_rational(std::string_view s)
{
    auto fail = [&] { return std::invalid_argument("theta: bad rational '" + std::string(s) + "'"); };
    if (s.empty()) {
        throw fail();
    }
    auto parse_uint = [&](std::string_view d) {
        if (d.empty() || d.size() > 18) {
            throw fail();
        }
        std::int64_t v = 0;
        for (char c : d) {
            if (c < '0' || c > '9') {
                throw fail();
            }
            v = v * 10 + (c - '0');
        }
        return v;
    };
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto den = parse_uint(s.substr(slash + 1));
        if (den == 0) {
            throw fail();
        }
        return {parse_uint(s.substr(0, slash)), den};
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto frac = s.substr(dot + 1);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        const auto whole = dot == 0 ? 0 : parse_uint(s.substr(0, dot));
        return {whole * scale + parse_uint(frac), scale};
    }
    return {parse_uint(s), 1};
}

std::string rational_text(const Rational& r)
{
    std::string out = std::to_string(r.numerator());
    if (r.denominator() != 1) {
        out += '/' + std::to_string(r.denominator());
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

} // namespace

ThetaSpec square_plus_one_table(u64 size)
{
    if (size > (u64{1} << 32) - 1) {
        throw std::invalid_argument("square_plus_one_table: size too large");
    }
    family::TableBacked t;
    t.rule = family::TableBacked::Rule::square_plus_one;
    t.size = size;
    return {t};
}

ThetaSpec parse_theta(std::string_view text)
{
    auto fail = [&] { return std::invalid_argument("theta: cannot parse '" + std::string(text) + "'"); };
    if (text == "sigma+1") {
        return {family::SigmaPlusOne{}};
    }
    if (text == "n+1") {
        return {family::NPlusOne{}};
    }
    if (text == "2^n") {
        return {family::PowerOfTwo{}};
    }
    if (text == "inf") {
        return {family::Infinity{}};
    }
    const auto parts = split(text, ':');
    const auto head = parts.front();
    if (head == "linear" && parts.size() == 2) {
        return {family::Linear{parse_rational(parts[1])}};
    }
    if ((head == "pow" || head == "exp" || head == "explog") && parts.size() == 3) {
        const Rational c = parse_rational(parts[1]);
        const Rational a = parse_rational(parts[2]);
        if (c <= 0) {
            throw std::invalid_argument("theta: coefficient must be positive");
        }
        if (head == "pow") {
            if (a < 1) {
                throw std::invalid_argument("theta: pow exponent must be >= 1");
            }
            return {family::MonomialPower{c, a}};
        }
        if (a <= 0) {
            throw std::invalid_argument("theta: exponent must be positive");
        }
        if (head == "exp") {
            return {family::ExpPower{c, a}};
        }
        return {family::ExpLogPower{c, a}};
    }
    if (head == "table" && parts.size() == 3 && parts[1] == "n^2+1") {
        const Rational n = parse_rational(parts[2]);
        if (n.denominator() != 1) {
            throw fail();
        }
        return square_plus_one_table(static_cast<u64>(n.numerator()));
    }
    if (head == "table" && parts.size() == 2) {
        family::TableBacked t;
        for (auto item : split(parts[1], ',')) {
            if (item == "inf") {
                t.values.emplace_back(std::nullopt);
                continue;
            }
            const Rational v = parse_rational(item);
            if (v.denominator() != 1) {
                throw std::invalid_argument("theta: table entries must be integers or inf");
            }
            t.values.emplace_back(static_cast<u64>(v.numerator()));
        }
        t.size = t.values.size();
        return {t};
    }
    throw fail();
}

std::string to_string(const ThetaSpec& spec)
{
    return std::visit(
        [](const auto& f) -> std::string {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::Linear>) {
                return "linear:" + rational_text(f.t);
            } else if constexpr (std::is_same_v<F, family::SigmaPlusOne>) {
                return "sigma+1";
            } else if constexpr (std::is_same_v<F, family::NPlusOne>) {
                return "n+1";
            } else if constexpr (std::is_same_v<F, family::PowerOfTwo>) {
                return "2^n";
            } else if constexpr (std::is_same_v<F, family::MonomialPower>) {
                return "pow:" + rational_text(f.c) + ':' + rational_text(f.a);
            } else if constexpr (std::is_same_v<F, family::ExpPower>) {
                return "exp:" + rational_text(f.c) + ':' + rational_text(f.a);
            } else if constexpr (std::is_same_v<F, family::ExpLogPower>) {
                return "explog:" + rational_text(f.c) + ':' + rational_text(f.a);
            } else if constexpr (std::is_same_v<F, family::Infinity>) {
                return "inf";
            } else {
                if (f.rule == family::TableBacked::Rule::square_plus_one) {
                    return "table:n^2+1:" + std::to_string(f.size);
                }
                std::string out = "table:";
                for (std::size_t i = 0; i < f.values.size(); ++i) {
                    if (i > 0) {
                        out += ',';
                    }
                    out += f.values[i] ? std::to_string(*f.values[i]) : "inf";
                }
                return out;
            }
        },
        spec.family);
}

std::vector<ThetaSpec> builtin_specs()
{
    return {parse_theta("linear:2"), parse_theta("sigma+1"),     parse_theta("n+1"),
            parse_theta("2^n"),      parse_theta("pow:1:2"),     parse_theta("exp:1:1"),
            parse_theta("explog:1:2"), parse_theta("inf"),       square_plus_one_table(100'000)};
}

} // namespace thetasieve
