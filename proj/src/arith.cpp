#include "thetasieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace thetasieve {

std::vector<std::uint32_t> primes_up_to(u64 limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 2) {
        return primes;
    }
    if (limit > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("primes_up_to: limit exceeds 32-bit range");
    }
    primes.push_back(2);
    if (limit < 3) {
        return primes;
    }

    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<char> small(root + 1, 1);
    std::vector<u64> sieving;
    for (u64 i = 3; i <= root; i += 2) {
        if (!small[i]) {
            continue;
        }
        sieving.push_back(i);
        for (u64 j = i * i; j <= root; j += 2 * i) {
            small[j] = 0;
        }
    }

    // Segment covers odd numbers lo, lo+2, ..., one byte each.
    constexpr u64 kSegment = u64{1} << 18;
    std::vector<char> seg(kSegment);
    std::vector<u64> next(sieving.size());
    for (std::size_t k = 0; k < sieving.size(); ++k) {
        next[k] = sieving[k] * sieving[k];
    }
    for (u64 lo = 3; lo <= limit; lo += 2 * kSegment) {
        const u64 hi = std::min(limit, lo + 2 * kSegment - 1);
        std::fill(seg.begin(), seg.end(), 1);
        for (std::size_t k = 0; k < sieving.size(); ++k) {
            const u64 p = sieving[k];
            if (p * p > hi) {
                break;
            }
            u64 j = next[k];
            for (; j <= hi; j += 2 * p) {
                seg[(j - lo) / 2] = 0;
            }
            next[k] = j;
        }
        for (u64 n = lo; n <= hi; n += 2) {
            if (seg[(n - lo) / 2]) {
                primes.push_back(static_cast<std::uint32_t>(n));
            }
        }
    }
    return primes;
}

std::span<const std::uint32_t> small_primes()
{
    static const std::vector<std::uint32_t> table = primes_up_to(kSmallPrimeLimit);
    return table;
}

u64 small_prime_pi(u64 y)
{
    if (y > kSmallPrimeLimit) {
        throw std::out_of_range("small_prime_pi: argument above table limit");
    }
    const auto ps = small_primes();
    return static_cast<u64>(std::upper_bound(ps.begin(), ps.end(), y) - ps.begin());
}

namespace {

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin(u64 n)
{
    // Deterministic for all n < 2^64 (Jim Sinclair's base set).
    constexpr u64 kBases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kBases) {
        a %= n;
        if (a == 0) {
            continue;
        }
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

// Brent's variant of Pollard rho; n must be odd and composite.
u64 pollard_rho(u64 n)
{
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        u64 y = 2;
        u64 x = 2;
        u64 g = 1;
        u64 q = 1;
        u64 ys = 2;
        constexpr u64 kBatch = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) {
                y = f(y);
            }
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void split_large(u64 n, std::vector<u64>& out)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

} // namespace

bool is_prime(u64 n)
{
    if (n < 2) {
        return false;
    }
    if (n <= kSmallPrimeLimit) {
        const auto ps = small_primes();
        return std::binary_search(ps.begin(), ps.end(), static_cast<std::uint32_t>(n));
    }
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) {
            return false;
        }
    }
    return miller_rabin(n);
}

Factorization factorize(u64 n)
{
    if (n == 0) {
        throw std::invalid_argument("factorize: n must be positive");
    }
    Factorization f;
    for (std::uint32_t p32 : small_primes()) {
        const u64 p = p32;
        if (p * p > n) {
            break;
        }
        if (n % p != 0) {
            continue;
        }
        unsigned e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        f.push_back({p, e});
    }
    if (n == 1) {
        return f;
    }
    // Every prime factor below 10^6 is gone, so a cofactor below 10^12 is prime.
    if (n < kSmallPrimeLimit * kSmallPrimeLimit) {
        f.push_back({n, 1});
        return f;
    }
    std::vector<u64> large;
    split_large(n, large);
    std::sort(large.begin(), large.end());
    for (u64 p : large) {
        if (!f.empty() && f.back().prime == p) {
            ++f.back().exponent;
        } else {
            f.push_back({p, 1});
        }
    }
    return f;
}

u64 reconstruct(const Factorization& f)
{
    u64 n = 1;
    for (const auto& [p, e] : f) {
        for (unsigned i = 0; i < e; ++i) {
            n *= p;
        }
    }
    return n;
}

u64 p_plus(u64 n)
{
    if (n == 1) {
        return 1;
    }
    return factorize(n).back().prime;
}

ExtendedReal p_minus(u64 n)
{
    if (n == 1) {
        return ExtendedReal::infinity();
    }
    return ExtendedReal(static_cast<double>(factorize(n).front().prime));
}

std::vector<u64> divisors(const Factorization& f)
{
    std::vector<u64> out{1};
    for (const auto& [p, e] : f) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                out.push_back(out[j] * pk);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

u128 divisor_sum(const Factorization& f)
{
    u128 s = 1;
    for (const auto& [p, e] : f) {
        u128 term = 1;
        u128 pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            term += pk;
        }
        s *= term;
    }
    return s;
}

namespace {

std::vector<std::uint32_t> primes_through(u64 y)
{
    if (y <= kSmallPrimeLimit) {
        const auto ps = small_primes();
        return {ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(small_prime_pi(y))};
    }
    return primes_up_to(y);
}

u64 phi_markoff(u64 x, u64 y)
{
    // Fast route when every surviving n > 1 must be prime.
    if (x <= kSmallPrimeLimit && y * y >= x) {
        return 1 + small_prime_pi(x) - small_prime_pi(y);
    }
    const auto primes = primes_through(y);
    constexpr u64 kSegment = u64{1} << 16;
    std::vector<char> seg(kSegment);
    std::vector<u64> next(primes.begin(), primes.end());
    u64 count = 0;
    for (u64 lo = 1; lo <= x; lo += kSegment) {
        const u64 hi = std::min(x, lo + kSegment - 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
        for (std::size_t k = 0; k < primes.size(); ++k) {
            const u64 p = primes[k];
            u64 j = next[k];
            for (; j <= hi; j += p) {
                seg[j - lo] = 0;
            }
            next[k] = j;
        }
        count += static_cast<u64>(std::count(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1));
    }
    return count;
}

struct LegendreMemo {
    std::span<const std::uint32_t> primes;
    std::unordered_map<u64, u64> cache;

    u64 phi(u64 x, std::size_t a)
    {
        if (x == 0) {
            return 0;
        }
        if (a == 0) {
            return x;
        }
        if (primes[a - 1] >= x) {
            return 1;
        }
        const bool cacheable = x < (u64{1} << 40) && a < (std::size_t{1} << 24);
        const u64 key = (x << 24) | a;
        if (cacheable) {
            if (auto it = cache.find(key); it != cache.end()) {
                return it->second;
            }
        }
        const u64 v = phi(x, a - 1) - phi(x / primes[a - 1], a - 1);
        if (cacheable) {
            cache.emplace(key, v);
        }
        return v;
    }
};

} // namespace

u64 phi_legendre(u64 x, u64 y)
{
    if (x == 0) {
        return 0;
    }
    if (y < 2) {
        return x;
    }
    if (y >= x) {
        return 1;
    }
    const auto primes = primes_through(y);
    LegendreMemo memo{primes, {}};
    return memo.phi(x, primes.size());
}

u64 phi_count_int(u64 x, u64 y)
{
    if (x == 0) {
        return 0;
    }
    if (y < 2) {
        return x;
    }
    if (y >= x) {
        return 1;
    }
    if (x <= kPhiSieveLimit) {
        return phi_markoff(x, y);
    }
    return phi_legendre(x, y);
}

u64 phi_count(double x, ExtendedReal y)
{
    if (!(x >= 1.0)) {
        return 0;
    }
    const u64 xi = static_cast<u64>(std::floor(x));
    if (y.is_infinite()) {
        return 1;
    }
    const double yv = std::floor(y.value());
    const u64 yi = yv >= static_cast<double>(xi) ? xi : static_cast<u64>(std::max(0.0, yv));
    return phi_count_int(xi, yi);
}

namespace {

// Effective Mertens-product bounds.
// Rosser & Schoenfeld (1962), Theorem 7:
//   e^{-g}/log y * (1 - 1/(2 log^2 y)) < prod  for y > 1,
//   prod < e^{-g}/log y * (1 + 1/(2 log^2 y))  for y > 285.
inline constexpr double kRosserSchoenfeldCoefficient = 0.5;
inline constexpr double kRosserSchoenfeldUpperFrom = 285.0;
// Dusart (2010), Theorem 6.12: relative error below 0.2/log^3 y for
// y >= 2278383.
inline constexpr double kDusartCoefficient = 0.2;
inline constexpr double kDusartFrom = 2278383.0;

// Relative slack for the rounding of log y, exp and the divisions below.
inline constexpr double kBoundSlack = 1e-14;

const std::vector<Interval>& mertens_prefix()
{
    static const std::vector<Interval> prefix = [] {
        const auto ps = small_primes();
        std::vector<Interval> out;
        out.reserve(ps.size() + 1);
        Interval acc(1.0);
        out.push_back(acc);
        for (std::uint32_t p : ps) {
            const double q = 1.0 - 1.0 / static_cast<double>(p);
            acc = acc * Interval(round_down(round_down(q)), round_up(round_up(q)));
            out.push_back(acc);
        }
        return out;
    }();
    return prefix;
}

} // namespace

Interval mertens_effective_bounds(double log_y)
{
    if (!(log_y > std::log(kRosserSchoenfeldUpperFrom))) {
        throw std::domain_error("mertens_effective_bounds: requires y > 285");
    }
    const double base = std::exp(-std::numbers::egamma) / log_y;
    double rel = kRosserSchoenfeldCoefficient / (log_y * log_y);
    if (log_y >= std::log(kDusartFrom)) {
        rel = std::min(rel, kDusartCoefficient / (log_y * log_y * log_y));
    }
    return {base * (1.0 - rel) * (1.0 - kBoundSlack), base * (1.0 + rel) * (1.0 + kBoundSlack)};
}

Interval mertens_product(double y, double crossover)
{
    if (!(y >= 2.0)) {
        return Interval(1.0);
    }
    if (std::isinf(y)) {
        return Interval(0.0);
    }
    if (y <= crossover) {
        const double yf = std::floor(y);
        if (yf <= static_cast<double>(kSmallPrimeLimit)) {
            return mertens_prefix()[small_prime_pi(static_cast<u64>(yf))];
        }
        Interval acc(1.0);
        for (std::uint32_t p : primes_up_to(static_cast<u64>(yf))) {
            const double q = 1.0 - 1.0 / static_cast<double>(p);
            acc = acc * Interval(round_down(round_down(q)), round_up(round_up(q)));
        }
        return acc;
    }
    return mertens_effective_bounds(std::log(std::floor(y)));
}

Interval mertens_product_from_log(double log_y)
{
    if (std::isinf(log_y)) {
        return Interval(0.0);
    }
    if (log_y <= std::log(kMertensCrossover) + 1.0) {
        return mertens_product(std::floor(std::exp(log_y)));
    }
    return mertens_effective_bounds(log_y);
}

} // namespace thetasieve
