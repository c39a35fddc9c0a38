#pragma once

// The symmetry frame of the step plot at ordinate t: the pendant index n_p
// and its fraction p, the Riemann-Siegel theta, the factor Q(s), the pendant
// offset L and centre P(s), and the regions of steps conjugate to each
// initial step n <= n_p.

#include <cmath>
#include <cstdint>
#include <string>

#include "zsym/core.hpp"
#include "zsym/ddouble.hpp"
#include "zsym/errors.hpp"
#include "zsym/steps.hpp"

namespace zsym {

/// |cos 2 pi p| below this marks the pendant as degenerate.
inline constexpr double degenerate_p_threshold = 1e-3;

/// Lower end of the accuracy contract of rs_theta.
inline constexpr double rs_theta_min_t = 10.0;

namespace detail {

/// Riemann-Siegel theta from its asymptotic series, leading terms in
/// double-double. Not range checked; the series is usable (error < 1e-9)
/// down to t = 2 pi, which is where the frame quantities start.
inline dd::ddouble theta_dd(double t) {
    const dd::ddouble x = dd::ddouble(t) / dd::two_pi;
    const double half = 0.5 * t;
    dd::ddouble th = dd::log(x) * half - dd::ddouble(half) - dd::ldexp(dd::pi, -3);
    const double u = 1.0 / t;
    const double u2 = u * u;
    const double tail =
        u * (1.0 / 48.0 +
             u2 * (7.0 / 5760.0 + u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0 + u2 * (511.0 / 1216512.0)))));
    return th + dd::ddouble(tail);
}

/// theta(t) mod 2 pi, in [0, 2 pi).
inline double theta_mod_two_pi(double t) {
    const double v = static_cast<double>(dd::mod_two_pi(theta_dd(t)));
    return (v >= two_pi || v < 0.0) ? 0.0 : v;
}

inline double theta_unchecked(double t) { return static_cast<double>(theta_dd(t)); }

inline void require_frame_t(double t, const char* op) {
    if (!(t >= two_pi) || !std::isfinite(t))
        throw domain_error(std::string(op) + " requires t >= 2*pi, got " + std::to_string(t));
}

} // namespace detail

/// Riemann-Siegel theta, accurate to 1e-10 absolute for t >= 10 (series
/// carried through the t^-9 term).
inline double rs_theta(double t) {
    if (!(t >= rs_theta_min_t) || !std::isfinite(t))
        throw domain_error("rs_theta requires t >= 10, got " + std::to_string(t));
    return detail::theta_unchecked(t);
}

struct SymmetryFrame {
    double t = 0.0;
    std::int64_t n_p = 1;      ///< floor(sqrt(t / 2 pi))
    double p = 0.0;            ///< fractional part of sqrt(t / 2 pi)
    double theta_rs = 0.0;     ///< Riemann-Siegel theta(t)
    double Theta = 0.0;        ///< -theta_rs; step angles are negative
    double q_magnitude = 1.0;  ///< (t / 2 pi)^{1/2 - sigma}
    bool degenerate_p = false; ///< |cos 2 pi p| < 1e-3
};

/// Frame quantities at ordinate t >= 2 pi. sigma only enters q_magnitude.
inline SymmetryFrame frame_of(double t, double sigma = 0.5) {
    detail::require_frame_t(t, "frame_of");
    SymmetryFrame f;
    f.t = t;
    const double ratio = t / two_pi;
    double x = std::sqrt(ratio);
    const double r = std::nearbyint(x);
    if (std::fabs(x - r) <= 8.0 * std::numeric_limits<double>::epsilon() * x) x = r;
    f.n_p = static_cast<std::int64_t>(std::floor(x));
    f.p = x - static_cast<double>(f.n_p);
    f.theta_rs = detail::theta_unchecked(t);
    f.Theta = -f.theta_rs;
    f.q_magnitude = std::exp((0.5 - sigma) * std::log(ratio));
    f.degenerate_p = std::fabs(std::cos(two_pi * f.p)) < degenerate_p_threshold;
    return f;
}

enum class QVariant {
    continuous, ///< |Q| = (t / 2 pi)^{1/2 - sigma}
    discrete,   ///< |Q| = n_p^{1 - 2 sigma}
};

/// Q(s) = |Q| e^{2 i Theta} = |Q| e^{-2 i theta(t)}. Never zero.
inline complex big_q(const Argument& s, QVariant variant = QVariant::continuous) {
    const double t = std::fabs(s.t);
    detail::require_frame_t(t, "big_q");
    double mag;
    if (variant == QVariant::continuous) {
        mag = std::exp((0.5 - s.sigma) * std::log(t / two_pi));
    } else {
        const SymmetryFrame f = frame_of(t);
        mag = std::exp((1.0 - 2.0 * s.sigma) * std::log(static_cast<double>(f.n_p)));
    }
    const double phase = -2.0 * detail::theta_mod_two_pi(t);
    const complex q = std::polar(mag, phase);
    return s.t < 0.0 ? std::conj(q) : q;
}

/// Lateral offset L from sum_1^{n_p} n^{-s} to the pendant centre:
///
///     L = -n_p^{-sigma} e^{-i (t log n_p + 2 pi p)} / (2 cos 2 pi p)
///
/// |L| grows without bound as p -> 1/4, 3/4 (the error lies along the
/// symmetry axis); that case is flagged, not rejected.
inline Flagged<complex> pendant_offset(const Argument& s) {
    const double t = std::fabs(s.t);
    const SymmetryFrame f = frame_of(t, s.sigma);
    const double np = static_cast<double>(f.n_p);
    const double phase = reduced_phase(t, np) - two_pi * f.p;
    const double mag = std::pow(np, -s.sigma) / (2.0 * std::cos(two_pi * f.p));
    Flagged<complex> out;
    out.value = -std::polar(1.0, phase) * mag;
    if (s.t < 0.0) out.value = std::conj(out.value);
    if (f.degenerate_p) out.flags.set(Flag::degenerate_p);
    return out;
}

/// The self-conjugate centre P(s) = sum_1^{n_p} n^{-s} + L.
inline Flagged<complex> center_point(const Argument& s) {
    const double t = std::fabs(s.t);
    const SymmetryFrame f = frame_of(t, s.sigma);
    Flagged<complex> out = pendant_offset({s.sigma, t});
    out.value += partial_sum(1, f.n_p, {s.sigma, t});
    if (s.t < 0.0) out.value = std::conj(out.value);
    return out;
}

/// Steps N_lo..N_hi whose first angle differences lie between the odd
/// multiples (2n - 1) pi and (2n + 1) pi; N_center has delta theta = 2 n pi.
struct ConjugateRegion {
    std::int64_t n = 1;
    std::int64_t N_lo = 0;
    std::int64_t N_center = 0;
    std::int64_t N_hi = 0;
    std::int64_t width = 0; ///< N_hi - N_lo + 1; may be <= 0 near n_p

    friend constexpr bool operator==(const ConjugateRegion&, const ConjugateRegion&) = default;
};

namespace detail {

// floor(t / (pi (2k + 1))): the last step before delta theta passes (2k+1) pi.
inline std::int64_t odd_boundary(double t, std::int64_t k) {
    const dd::ddouble q = dd::ddouble(t) / (dd::pi * static_cast<double>(2 * k + 1));
    return snap_floor(static_cast<double>(q));
}

} // namespace detail

inline ConjugateRegion conj_region(std::int64_t n, double t) {
    const SymmetryFrame f = frame_of(t);
    if (n < 1 || n > f.n_p)
        throw domain_error("conj_region: n = " + std::to_string(n) + " outside [1, n_p = " +
                           std::to_string(f.n_p) + "]");
    ConjugateRegion r;
    r.n = n;
    r.N_lo = detail::odd_boundary(t, n) + 1;
    r.N_hi = std::min(detail::odd_boundary(t, n - 1), detail::odd_boundary(t, 0));
    r.N_center = static_cast<std::int64_t>(std::llround(t / (two_pi * static_cast<double>(n))));
    r.width = r.N_hi - r.N_lo + 1;
    return r;
}

/// Direct sum of the steps in the region conjugate to n.
inline complex conj_sum_direct(std::int64_t n, const Argument& s) {
    const ConjugateRegion r = conj_region(n, s.t);
    return partial_sum(r.N_lo, r.N_hi, s);
}

/// Cornu-spiral estimate of the conjugate-region sum,
///
///     n_p^{1 - 2 sigma} / n^{1 - s} * e^{i (2 theta_{N_center} - pi/4)},
///
/// with theta_N = -t log N. Accurate only for n well below n_p; flagged
/// accuracy_unguaranteed when n > n_p / 4.
inline Flagged<complex> conj_sum_predicted(std::int64_t n, const Argument& s) {
    const SymmetryFrame f = frame_of(s.t, s.sigma);
    const ConjugateRegion r = conj_region(n, s.t);
    const double nn = static_cast<double>(n);
    const double mag = std::exp((1.0 - 2.0 * s.sigma) * std::log(static_cast<double>(f.n_p)) +
                                (s.sigma - 1.0) * std::log(nn));
    // n^{-(1-s)} contributes +t log n = -reduced_phase(t, n) (mod 2 pi).
    const double phase = -reduced_phase(s.t, nn) + 2.0 * reduced_phase(s.t, static_cast<double>(r.N_center)) -
                         0.25 * pi;
    Flagged<complex> out;
    out.value = std::polar(mag, phase);
    if (4 * n > f.n_p) out.flags.set(Flag::accuracy_unguaranteed);
    return out;
}

/// Jacobi theta sum G(u) = sum_n exp(-pi n^2 u^2), truncated where the first
/// omitted term drops below 1e-16 of the n = 0 term.
inline complex jacobi_g(const complex& u) {
    const complex u2 = u * u;
    if (!(u2.real() > 0.0))
        throw domain_error("jacobi_g diverges unless Re(u^2) > 0");
    const double m = std::ceil(std::sqrt(36.9 / (pi * u2.real())));
    if (m > 1e7) throw range_error("jacobi_g needs more than 1e7 terms");
    const auto terms = static_cast<std::int64_t>(m);
    ComplexAccumulator acc;
    for (std::int64_t k = terms; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        acc += 2.0 * std::exp(-pi * kk * kk * u2);
    }
    acc += complex(1.0, 0.0);
    return acc.value();
}

} // namespace zsym
