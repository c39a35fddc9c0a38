#pragma once

// Double-double ("double-width") arithmetic: a value is the unevaluated sum
// hi + lo with |lo| <= ulp(hi)/2, giving roughly 106 bits of significand.
// Only the handful of operations needed for phase reduction are provided.

#include <cmath>

namespace zsym::dd {

struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ddouble() = default;
    constexpr ddouble(double h) : hi(h) {}
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

// Error-free transformations.
inline ddouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline ddouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ddouble operator+(const ddouble& a, const ddouble& b) {
    ddouble s = two_sum(a.hi, b.hi);
    ddouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ddouble operator-(const ddouble& a) { return {-a.hi, -a.lo}; }

inline ddouble operator-(const ddouble& a, const ddouble& b) { return a + (-b); }

inline ddouble operator*(const ddouble& a, const ddouble& b) {
    ddouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble operator*(const ddouble& a, double b) {
    ddouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble operator/(const ddouble& a, const ddouble& b) {
    double q1 = a.hi / b.hi;
    ddouble r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    ddouble q = quick_two_sum(q1, q2);
    return q + ddouble(q3);
}

inline ddouble ldexp(const ddouble& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline constexpr ddouble two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr ddouble pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr ddouble ln2{0.6931471805599453, 2.3190468138462996e-17};

/// exp(a) for |a| < ~700. Argument reduction by ln 2 and 2^-10, then Taylor.
inline ddouble exp(const ddouble& a) {
    constexpr int squarings = 10;
    const double k = std::nearbyint(a.hi / ln2.hi);
    ddouble r = ldexp(a - ln2 * k, -squarings);

    // expm1(r) by Taylor; |r| < 2^-10 * ln2 / 2, so 12 terms reach 1e-40.
    ddouble term = r;
    ddouble sum = r;
    for (int i = 2; i <= 12; ++i) {
        term = term * r / ddouble(static_cast<double>(i));
        sum = sum + term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    // expm1(2x) = 2 expm1(x) + expm1(x)^2
    for (int i = 0; i < squarings; ++i) sum = sum * 2.0 + sum * sum;
    return ldexp(sum + ddouble(1.0), static_cast<int>(k));
}

/// Natural log of a positive double-double. One Newton step on exp from the
/// double-precision log doubles the number of correct bits.
inline ddouble log(const ddouble& a) {
    const double x0 = std::log(a.hi);
    return ddouble(x0) + a * exp(ddouble(-x0)) - ddouble(1.0);
}

/// a - 2*pi*k with k = floor(a / 2*pi); result in [0, 2*pi) up to rounding.
inline ddouble mod_two_pi(const ddouble& a) {
    const double k = std::floor(a.hi / two_pi.hi);
    ddouble r = a - two_pi * k;
    if (r.hi < 0.0) r = r + two_pi;
    if (r.hi >= two_pi.hi) r = r - two_pi;
    return r;
}

} // namespace zsym::dd
