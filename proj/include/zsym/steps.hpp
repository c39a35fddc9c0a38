#pragma once

// Individual steps n^{-s}: lengths n^{-sigma}, angles -t log n, their
// forward differences, and compensated partial sums.

#include <cmath>
#include <cstdint>
#include <string>

#include "zsym/core.hpp"
#include "zsym/ddouble.hpp"
#include "zsym/errors.hpp"

namespace zsym {

/// Largest b - a accepted by the summation routines.
inline constexpr std::int64_t max_sum_span = 1'000'000'000;

/// (-t log x) mod 2*pi in [0, 2*pi).
///
/// The product t log x is formed in double-double before the reduction, so
/// the result stays within 1e-9 rad for t up to 1e8 even though t log x
/// then carries ten integer digits.
inline double reduced_phase(double t, double x) {
    const dd::ddouble phase = dd::log(dd::ddouble(x)) * t;
    const dd::ddouble r = dd::mod_two_pi(-phase);
    const double v = r.hi + r.lo;
    return (v >= two_pi || v < 0.0) ? 0.0 : v;
}

/// n^{-s}. Computed for |t| and conjugated, so step_term(n, conj(s)) is
/// exactly conj(step_term(n, s)).
inline complex step_term(std::int64_t n, const Argument& s) {
    const double len = std::pow(static_cast<double>(n), -s.sigma);
    const double angle = reduced_phase(std::fabs(s.t), static_cast<double>(n));
    const double im = len * std::sin(angle);
    return {len * std::cos(angle), s.t < 0.0 ? -im : im};
}

namespace detail {

inline void check_span(std::int64_t a, std::int64_t b) {
    if (a < 1) throw domain_error("partial sums start at n >= 1, got " + std::to_string(a));
    if (b >= a && b - a > max_sum_span)
        throw range_error("partial sum over " + std::to_string(b - a + 1) + " terms exceeds the resource guard");
}

} // namespace detail

/// sum_{n=a}^{b} n^{-s}, ascending, compensated. Empty (zero) when b < a.
inline complex partial_sum(std::int64_t a, std::int64_t b, const Argument& s) {
    detail::check_span(a, b);
    ComplexAccumulator acc;
    for (std::int64_t n = a; n <= b; ++n) acc += step_term(n, s);
    return acc.value();
}

/// One step of the step plot.
struct StepRecord {
    std::int64_t n = 1;
    double length = 1.0;    ///< n^{-sigma}
    double angle = 0.0;     ///< (-t log n) mod 2*pi
    complex cumulative{};   ///< sum_{m=a}^{n} m^{-s}
};

/// Calls visit(const StepRecord&) for n = a..b. The cumulative column uses
/// the same accumulator and order as partial_sum, so the final record's
/// cumulative equals partial_sum(a, b, s) bit for bit.
template <class Visitor>
void walk_steps(std::int64_t a, std::int64_t b, const Argument& s, Visitor&& visit) {
    detail::check_span(a, b);
    ComplexAccumulator acc;
    for (std::int64_t n = a; n <= b; ++n) {
        const complex z = step_term(n, s);
        acc += z;
        StepRecord rec;
        rec.n = n;
        rec.length = std::abs(z);
        rec.angle = reduced_phase(s.t, static_cast<double>(n));
        rec.cumulative = acc.value();
        visit(static_cast<const StepRecord&>(rec));
    }
}

struct AngleDiffs {
    double delta1_raw = 0.0;  ///< -t log((n+1)/n)
    double delta1_mod = 0.0;  ///< delta1_raw reduced into (-2*pi, 0]
    double delta2_mod = 0.0;  ///< theta_{n+2} - 2 theta_{n+1} + theta_n, reduced into [0, 2*pi)
};

/// First and second forward angle differences at step n.
inline AngleDiffs angle_diffs(std::int64_t n, double t) {
    if (n < 1) throw domain_error("angle_diffs needs n >= 1");
    const double x = static_cast<double>(n);
    const dd::ddouble l0 = dd::log(dd::ddouble(x));
    const dd::ddouble l1 = dd::log(dd::ddouble(x + 1.0));
    const dd::ddouble l2 = dd::log(dd::ddouble(x + 2.0));

    // log((n+1)/n) as a difference of double-double logs keeps full relative
    // accuracy at large n, like log1p(1/n) would.
    const dd::ddouble first = (l1 - l0) * t;
    const dd::ddouble second = (l1 * 2.0 - l0 - l2) * t;

    AngleDiffs d;
    d.delta1_raw = -static_cast<double>(first);
    const double m1 = static_cast<double>(dd::mod_two_pi(first));
    d.delta1_mod = (m1 >= two_pi) ? 0.0 : -m1;
    const double m2 = static_cast<double>(dd::mod_two_pi(second));
    d.delta2_mod = (m2 >= two_pi) ? 0.0 : m2;
    return d;
}

} // namespace zsym
