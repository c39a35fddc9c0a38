#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace zsym {

using complex = std::complex<double>;

/// A point s = sigma + i t.
struct Argument {
    double sigma = 0.5;
    double t = 0.0;

    friend constexpr bool operator==(const Argument&, const Argument&) = default;
};

constexpr Argument conj(const Argument& s) { return {s.sigma, -s.t}; }

/// The argument 1 - sigma + i t. This is conj(1 - s); quantities at 1 - s are
/// obtained from it by complex conjugation.
constexpr Argument mirrored(const Argument& s) { return {1.0 - s.sigma, s.t}; }

enum class Flag : unsigned {
    degenerate_p = 1u << 0,
    accuracy_unguaranteed = 1u << 1,
};

class Flags {
public:
    constexpr Flags() = default;
    constexpr Flags(Flag f) : bits_(static_cast<unsigned>(f)) {}

    constexpr bool has(Flag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr void set(Flag f) { bits_ |= static_cast<unsigned>(f); }

    constexpr Flags& operator|=(Flags other) {
        bits_ |= other.bits_;
        return *this;
    }
    friend constexpr Flags operator|(Flags a, Flags b) { return a |= b; }
    friend constexpr bool operator==(Flags, Flags) = default;

private:
    unsigned bits_ = 0;
};

/// A value together with the accuracy flags raised while computing it.
template <class T>
struct Flagged {
    T value{};
    Flags flags{};
};

/// Neumaier-compensated complex accumulator.
class ComplexAccumulator {
public:
    void add(const complex& z) {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }

    ComplexAccumulator& operator+=(const complex& z) {
        add(z);
        return *this;
    }

    complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double re_ = 0.0, re_c_ = 0.0;
    double im_ = 0.0, im_c_ = 0.0;
};

inline constexpr double two_pi = 6.283185307179586;
inline constexpr double pi = 3.141592653589793;

namespace detail {

/// floor(x), except that values within a few ulps of an integer snap to it.
/// Integer-valued boundaries (t = 2*pi*k^2, t = pi*N) are computed from
/// rounded inputs and must not fall one short.
inline std::int64_t snap_floor(double x) {
    const double r = std::nearbyint(x);
    if (std::fabs(x - r) <= 8.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, std::fabs(x)))
        return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(x));
}

} // namespace detail
} // namespace zsym
