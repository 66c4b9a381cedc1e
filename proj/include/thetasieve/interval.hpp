#ifndef THETASIEVE_INTERVAL_HPP
#define THETASIEVE_INTERVAL_HPP

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace thetasieve {

// Closed interval [lo, hi] of doubles. Arithmetic rounds outward by one ulp
// per operation so that a true value inside the operands stays inside the
// result.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h)
    {
        if (!(l <= h)) {
            throw std::invalid_argument("Interval: lo > hi");
        }
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline double round_down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

// [v, v] widened by one ulp on each side; use for values that carry one
// rounding error of their own.
inline Interval widen(double v) { return {round_down(v), round_up(v)}; }

inline Interval operator+(const Interval& a, const Interval& b)
{
    return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b)
{
    return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }

inline Interval operator*(const Interval& a, const Interval& b)
{
    if (a.lo >= 0.0 && b.lo >= 0.0) {
        return {round_down(a.lo * b.lo), round_up(a.hi * b.hi)};
    }
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double l = p[0];
    double h = p[0];
    for (double v : p) {
        l = std::fmin(l, v);
        h = std::fmax(h, v);
    }
    return {round_down(l), round_up(h)};
}

// Division by a positive scalar.
inline Interval operator/(const Interval& a, double d)
{
    if (!(d > 0.0)) {
        throw std::invalid_argument("Interval: division by non-positive scalar");
    }
    return {round_down(a.lo / d), round_up(a.hi / d)};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }

inline Interval hull(const Interval& a, const Interval& b)
{
    return {std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi)};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& v)
{
    return os << '[' << v.lo << ", " << v.hi << ']';
}

// A nonnegative real or +infinity. Stored as a double whose infinite state is
// IEEE +inf, so the usual ordering already places infinity above every
// finite value.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

    constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
    constexpr double value() const { return value_; }

    constexpr auto operator<=>(const ExtendedReal&) const = default;

private:
    double value_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedReal& v)
{
    if (v.is_infinite()) {
        return os << "inf";
    }
    return os << v.value();
}

} // namespace thetasieve

#endif
