#pragma once

// Zeta evaluators: the first-order Euler-Maclaurin point conjugate to the
// origin, the symmetric form P(s) + Q(s) P(1 - s), the first-order
// Riemann-Siegel Z function, and a full Euler-Maclaurin reference used as
// the ground-truth oracle throughout the library and its tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "zsym/core.hpp"
#include "zsym/ddouble.hpp"
#include "zsym/errors.hpp"
#include "zsym/steps.hpp"
#include "zsym/symmetry.hpp"

namespace zsym {

enum class Algorithm { em_paper, reference, symmetric, rs_line };

inline const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::em_paper: return "em_paper";
    case Algorithm::reference: return "reference";
    case Algorithm::symmetric: return "symmetric";
    case Algorithm::rs_line: return "rs_line";
    }
    return "?";
}

struct EvalResult {
    complex value{};
    Algorithm algorithm = Algorithm::reference;
    std::int64_t terms_used = 0;
    Flags flags{};
    /// Estimated absolute error (reference and symmetric evaluators).
    double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline EvalResult conj_result(EvalResult r) {
    r.value = std::conj(r.value);
    return r;
}

inline void require_em_domain(const Argument& s) {
    if (!(s.sigma > 0.0 && s.sigma < 1.5) || !(std::fabs(s.t) >= 50.0) || !std::isfinite(s.t))
        throw domain_error("eval_em_paper requires sigma in (0, 1.5) and |t| >= 50");
}

} // namespace detail

/// The Euler-Maclaurin first-order scroll centre with an explicit upper
/// limit N:
///
///     sum_1^N m^{-s} - N^{-s} / 2 + (sigma + i dt) / (4 N^{s+1}),  dt = t - pi N.
///
/// For N = floor(t / pi) this is eval_em_paper; moving N by one leaves the
/// value essentially unchanged.
inline EvalResult eval_em_paper_limit(const Argument& s, std::int64_t N) {
    detail::require_em_domain(s);
    if (N < 1) throw domain_error("eval_em_paper_limit needs N >= 1");
    if (s.t < 0.0) return detail::conj_result(eval_em_paper_limit(conj(s), N));

    const complex head = partial_sum(1, N, s);
    const complex last = step_term(N, s);
    const double dt = static_cast<double>(dd::ddouble(s.t) - dd::pi * static_cast<double>(N));
    const complex correction = complex(s.sigma, dt) * last / (4.0 * static_cast<double>(N));

    EvalResult r;
    r.value = head - 0.5 * last + correction;
    r.algorithm = Algorithm::em_paper;
    r.terms_used = N;
    return r;
}

/// zeta(s) as the point conjugate to the origin, with N = floor(t / pi).
inline EvalResult eval_em_paper(const Argument& s) {
    detail::require_em_domain(s);
    return eval_em_paper_limit(s, detail::snap_floor(std::fabs(s.t) / pi));
}

struct ReferenceOptions {
    double target_abs_error = 1e-10;
    /// Fixed Dirichlet truncation point; 0 selects it from the target.
    std::int64_t truncation = 0;
    std::int64_t max_truncation = 100'000'000;
};

namespace detail {

struct Bernoulli {
    double num;
    double den;
};

// B_2 .. B_26. The series uses B_2..B_24; B_26 only bounds the remainder.
inline constexpr std::array<Bernoulli, 13> bernoulli_even{{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
}};

inline constexpr int em_series_terms = 12;

/// B_{2k} / (2k)!
inline double bernoulli_coefficient(int k) {
    double fact = 1.0;
    for (int j = 2; j <= 2 * k; ++j) fact *= j;
    const Bernoulli& b = bernoulli_even[static_cast<std::size_t>(k - 1)];
    return b.num / b.den / fact;
}

/// Bound on the Euler-Maclaurin remainder after em_series_terms correction
/// terms: |(s + 2K + 1) / (sigma + 2K + 1)| * |T_{K+1}|, evaluated in logs.
inline double em_remainder_bound(const Argument& s, double N) {
    const int k = em_series_terms + 1;
    double log_mag = std::log(std::fabs(bernoulli_coefficient(k)));
    for (int j = 0; j <= 2 * k - 2; ++j) log_mag += std::log(std::abs(complex(s.sigma + j, s.t)));
    log_mag += (-s.sigma - 2.0 * k + 1.0) * std::log(N);
    const double lead = std::abs(complex(s.sigma + 2 * em_series_terms + 1, s.t)) /
                        std::max(1.0, s.sigma + 2 * em_series_terms + 1);
    return lead * std::exp(log_mag);
}

inline std::int64_t choose_truncation(const Argument& s, double target, std::int64_t cap, double& bound) {
    double N = std::max(10.0, std::ceil(0.05 * std::abs(complex(s.sigma, s.t))));
    bound = em_remainder_bound(s, N);
    while (bound > 0.25 * target && N < static_cast<double>(cap)) {
        N = std::min(static_cast<double>(cap), std::ceil(N * 1.15));
        bound = em_remainder_bound(s, N);
    }
    return static_cast<std::int64_t>(N);
}

} // namespace detail

/// Full Euler-Maclaurin evaluation of zeta(s):
///
///     sum_{n<N} n^{-s} + N^{-s}/2 + N^{1-s}/(s-1)
///         + sum_{k=1}^{12} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
///
/// The Dirichlet part is summed in descending order. N is the smallest
/// value (on a 15% ladder) whose remainder bound meets the target, unless
/// fixed through the options. Throws convergence_error carrying the best
/// estimate when the target cannot be met.
inline EvalResult eval_reference(const Argument& s, const ReferenceOptions& opt = {}) {
    if (!std::isfinite(s.sigma) || !std::isfinite(s.t))
        throw domain_error("eval_reference: non-finite argument");
    if (s.sigma == 1.0 && s.t == 0.0) throw domain_error("eval_reference: pole at s = 1");
    if (!(opt.target_abs_error >= 1e-12))
        throw domain_error("eval_reference: target_abs_error must be >= 1e-12");
    if (s.t < 0.0) return detail::conj_result(eval_reference(conj(s), opt));

    double bound = 0.0;
    std::int64_t N = opt.truncation;
    if (N > 0) {
        bound = detail::em_remainder_bound(s, static_cast<double>(N));
    } else {
        N = detail::choose_truncation(s, opt.target_abs_error, opt.max_truncation, bound);
    }
    if (N < 2) throw domain_error("eval_reference: truncation must be >= 2");
    if (N - 1 > max_sum_span) throw range_error("eval_reference: truncation exceeds the resource guard");

    ComplexAccumulator acc;
    double sum_sq = 0.0;
    for (std::int64_t n = N - 1; n >= 1; --n) {
        const complex z = step_term(n, s);
        acc += z;
        sum_sq += std::norm(z);
    }

    const double Nd = static_cast<double>(N);
    const complex sN = complex(s.sigma, s.t);
    const complex n_pow = step_term(N, s); // N^{-s}
    acc += 0.5 * n_pow;
    acc += Nd * n_pow / (sN - 1.0);

    // T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    complex poch = sN;
    complex scale = n_pow / Nd;
    for (int k = 1; k <= detail::em_series_terms; ++k) {
        if (k > 1) {
            poch *= (sN + (2.0 * k - 3.0)) * (sN + (2.0 * k - 2.0));
            scale /= Nd * Nd;
        }
        acc += detail::bernoulli_coefficient(k) * poch * scale;
    }

    EvalResult r;
    r.value = acc.value();
    r.algorithm = Algorithm::reference;
    r.terms_used = N;
    const double eps = std::numeric_limits<double>::epsilon();
    r.error_estimate = bound + 4.0 * eps * (std::sqrt(sum_sq) + std::abs(r.value));
    if (opt.truncation == 0 && r.error_estimate > opt.target_abs_error)
        throw convergence_error("eval_reference: target " + std::to_string(opt.target_abs_error) +
                                    " unreachable, best estimate " + std::to_string(r.error_estimate),
                                r.error_estimate);
    return r;
}

enum class RemainderScale {
    sum_limit, ///< n_p^{-1/2}, the length of the main sum
    standard,  ///< (t / 2 pi)^{-1/4}
};

namespace detail {

/// cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p). Numerator and denominator both
/// vanish at p = 1/4 and 3/4; near those points a fourth-order expansion in
/// u = p - p0 replaces the quotient.
inline double remainder_ratio(double p) {
    const double den = std::cos(two_pi * p);
    if (std::fabs(den) >= degenerate_p_threshold)
        return std::cos(two_pi * (p * p - p - 0.0625)) / den;
    // C(3/4 + u) = h(u), C(1/4 + u) = h(-u),
    // h(u) = 1/2 + u + (pi^2/4) u^2 + (pi^2/6) u^3 + (5 pi^4/48 - pi^2) u^4
    constexpr double pi2 = pi * pi;
    constexpr double c2 = pi2 / 4.0;
    constexpr double c3 = pi2 / 6.0;
    constexpr double c4 = 5.0 * pi2 * pi2 / 48.0 - pi2;
    const double u = (p < 0.5) ? -(p - 0.25) : (p - 0.75);
    return 0.5 + u * (1.0 + u * (c2 + u * (c3 + u * c4)));
}

} // namespace detail

/// Riemann's first-order remainder (-1)^{n_p - 1} C(p) / n_p^{1/2}.
inline double rs_remainder(double t, RemainderScale scale = RemainderScale::sum_limit) {
    const SymmetryFrame f = frame_of(t);
    const double c = detail::remainder_ratio(f.p);
    const double sign = (f.n_p % 2 == 1) ? 1.0 : -1.0;
    const double amp = scale == RemainderScale::sum_limit ? 1.0 / std::sqrt(static_cast<double>(f.n_p))
                                                      : std::pow(t / two_pi, -0.25);
    return sign * c * amp;
}

/// First-order Riemann-Siegel Z(t) = 2 sum_{n<=n_p} n^{-1/2} cos(theta - t log n) + R.
inline double rs_z(double t, RemainderScale scale = RemainderScale::sum_limit) {
    const SymmetryFrame f = frame_of(t);
    const double th = detail::theta_mod_two_pi(t);
    double sum = 0.0, comp = 0.0;
    for (std::int64_t n = 1; n <= f.n_p; ++n) {
        const double nd = static_cast<double>(n);
        const double term = 2.0 * std::cos(th + reduced_phase(t, nd)) / std::sqrt(nd);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum + rs_remainder(t, scale);
}

/// zeta(1/2 + i t) recovered from Z: Z(t) e^{-i theta(t)}.
inline complex zeta_on_line(double t) {
    const double z = rs_z(t);
    return std::polar(z, -detail::theta_mod_two_pi(t));
}

/// zeta_on_line wrapped as an evaluator; sigma must be 1/2.
inline EvalResult eval_rs_line(const Argument& s) {
    if (s.sigma != 0.5) throw domain_error("rs_line is only defined on sigma = 1/2");
    const double t = std::fabs(s.t);
    detail::require_frame_t(t, "rs_line");
    EvalResult r;
    r.value = zeta_on_line(t);
    if (s.t < 0.0) r.value = std::conj(r.value);
    r.algorithm = Algorithm::rs_line;
    r.terms_used = frame_of(t).n_p;
    return r;
}

/// Tolerance of the symmetric form against the reference oracle.
inline constexpr double symmetric_tolerance = 5e-2;

/// Error of P(s) + Q(s) P(1 - s) from the pendant offset: L's phase is
/// first order in 1/n_p and misses 2 pi p^3 / (3 n_p), which the
/// 1 / cos(2 pi p) factor then amplifies near p = 1/4, 3/4.
inline double symmetric_error_estimate(const SymmetryFrame& f, double sigma) {
    const double np = static_cast<double>(f.n_p);
    const double phase_error = two_pi * f.p * f.p * f.p / (3.0 * np);
    return std::pow(np, -sigma) * phase_error / std::fabs(std::cos(two_pi * f.p));
}

/// zeta(s) = P(s) + Q(s) P(1 - s). The value at 1 - s = conj(1 - sigma + i t)
/// is taken as the conjugate of the centre point at 1 - sigma + i t.
/// Raises accuracy_unguaranteed when the pendant error estimate exceeds 0.8
/// of symmetric_tolerance (measured error stays within 1.05x the estimate).
inline EvalResult eval_symmetric(const Argument& s) {
    if (!(s.sigma > 0.0 && s.sigma < 1.0)) throw domain_error("eval_symmetric requires sigma in (0, 1)");
    const double t = std::fabs(s.t);
    detail::require_frame_t(t, "eval_symmetric");
    if (s.t < 0.0) return detail::conj_result(eval_symmetric(conj(s)));

    const Flagged<complex> p = center_point(s);
    const Flagged<complex> p1 = center_point(mirrored(s));
    EvalResult r;
    r.value = p.value + big_q(s) * std::conj(p1.value);
    r.algorithm = Algorithm::symmetric;
    r.terms_used = 2 * frame_of(t).n_p;
    r.flags = p.flags | p1.flags;
    const SymmetryFrame f = frame_of(t, s.sigma);
    r.error_estimate = symmetric_error_estimate(f, s.sigma);
    if (r.error_estimate > 0.8 * symmetric_tolerance) r.flags.set(Flag::accuracy_unguaranteed);
    return r;
}

/// Z(t) from the reference oracle: Re(e^{i theta(t)} zeta(1/2 + i t)).
inline double z_reference(double t, double target_abs_error = 1e-11) {
    detail::require_frame_t(t, "z_reference");
    ReferenceOptions opt;
    opt.target_abs_error = target_abs_error;
    const complex z = eval_reference({0.5, t}, opt).value;
    return (std::polar(1.0, detail::theta_mod_two_pi(t)) * z).real();
}

/// Dispatch by algorithm tag.
inline EvalResult evaluate(const Argument& s, Algorithm a, const ReferenceOptions& opt = {}) {
    switch (a) {
    case Algorithm::em_paper: return eval_em_paper(s);
    case Algorithm::reference: return eval_reference(s, opt);
    case Algorithm::symmetric: return eval_symmetric(s);
    case Algorithm::rs_line: return eval_rs_line(s);
    }
    throw domain_error("unknown algorithm");
}

} // namespace zsym
