#pragma once

// Gram points, sign-change scanning of Z(t), zero refinement and the
// statistics of zero positions inside Gram intervals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zsym/core.hpp"
#include "zsym/ddouble.hpp"
#include "zsym/errors.hpp"
#include "zsym/evaluators.hpp"
#include "zsym/parallel.hpp"
#include "zsym/symmetry.hpp"

namespace zsym {

struct GramPoint {
    std::int64_t index = 0;
    double t = 0.0; ///< theta(t) = index * pi
};

/// Gram point g_N, the solution of theta(t) = N pi on the increasing branch
/// t > 2 pi. N = -1 (g_{-1} ~ 9.667) is accepted so that the first zero has
/// a Gram interval.
///
/// Newton from the right of the root: theta is convex there, so the
/// iterates decrease monotonically. The residual is formed in double-double.
inline GramPoint gram_point(std::int64_t N) {
    if (N < -1) throw domain_error("gram_point: N must be >= -1");
    // x = t / 2 pi satisfies x (log x - 1) ~ N + 1/8; any x with
    // x (log x - 1) above that lies right of the root.
    double t = two_pi * (static_cast<double>(N) + 1.0 + std::exp(2.0));
    const dd::ddouble target = dd::pi * static_cast<double>(N);
    for (int it = 0; it < 50; ++it) {
        const double f = static_cast<double>(detail::theta_dd(t) - target);
        const double fp = 0.5 * std::log(t / two_pi) - 1.0 / (48.0 * t * t);
        const double step = f / fp;
        const double next = t - step;
        const double floor_ulp = 2.0 * std::numeric_limits<double>::epsilon() * t;
        if (std::fabs(f) < 1e-10 || std::fabs(step) <= floor_ulp) {
            return {N, std::fabs(f) < 1e-10 ? t : next};
        }
        t = next;
    }
    throw convergence_error("gram_point: Newton iteration did not converge for N = " + std::to_string(N),
                            std::numeric_limits<double>::quiet_NaN());
}

/// Index N of the Gram interval [g_N, g_{N+1}) containing t (t > g_{-1}).
inline std::int64_t gram_interval_index(double t) {
    detail::require_frame_t(t, "gram_interval_index");
    auto N = static_cast<std::int64_t>(std::floor(detail::theta_unchecked(t) / pi));
    N = std::max<std::int64_t>(N, -1);
    if (gram_point(N).t > t && N > -1) --N;
    else if (gram_point(N + 1).t <= t) ++N;
    return N;
}

/// (t - midpoint) / half-width of the Gram interval [g_N, g_{N+1}].
inline double gram_offset(double t, std::int64_t N) {
    const double a = gram_point(N).t;
    const double b = gram_point(N + 1).t;
    return (t - 0.5 * (a + b)) / (0.5 * (b - a));
}

/// Interval [lo, hi] across which Z changes sign.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct ZeroRecord {
    std::int64_t ordinal = 1;
    double t = 0.0;
    Bracket bracket{};
    std::int64_t gram_index = 0;
    double scaled_offset = 0.0;
    /// |zeta(1/2 + i t)| from the reference oracle, NaN when not certified.
    double residual = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr int default_subdivisions_per_gram = 8;

namespace detail {

/// Sign-change brackets of Z on `points` equally spaced nodes of [a, b].
inline std::vector<Bracket> scan_interval(double a, double b, int points, double (*z)(double)) {
    std::vector<Bracket> out;
    double prev_t = a;
    double prev_z = z(a);
    for (int k = 1; k <= points; ++k) {
        const double x = (k == points) ? b : a + (b - a) * k / points;
        const double zx = z(x);
        if ((prev_z < 0.0) != (zx < 0.0)) out.push_back({prev_t, x});
        prev_t = x;
        prev_z = zx;
    }
    return out;
}

// The scan uses the (t / 2 pi)^{-1/4} remainder scale: at n_p = 1, 2 the
// n_p^{-1/2} scale moves sign changes by up to 0.2 (25.01 -> 24.82).
inline double rs_z_default(double t) { return rs_z(t, RemainderScale::standard); }
inline double z_reference_default(double t) { return z_reference(t); }

} // namespace detail

/// All sign-change brackets of rs_z in [t_lo, t_hi].
///
/// The range is cut at Gram points and each piece sampled at
/// `subdivisions_per_gram` sub-intervals. Whenever the running bracket count
/// falls behind the smooth count (theta(b) - theta(t_lo)) / pi by two or
/// more, the piece is rescanned at four times the density.
inline std::vector<Bracket> scan_z_sign_changes(double t_lo, double t_hi,
                                                int subdivisions_per_gram = default_subdivisions_per_gram,
                                                unsigned workers = 1) {
    detail::require_frame_t(t_lo, "scan_z_sign_changes");
    if (!(t_hi >= t_lo)) throw domain_error("scan_z_sign_changes: t_hi < t_lo");
    if (subdivisions_per_gram < 4) throw domain_error("scan_z_sign_changes: subdivisions_per_gram must be >= 4");
    if (t_hi == t_lo) return {};

    std::vector<double> cuts{t_lo};
    auto N = static_cast<std::int64_t>(std::floor(detail::theta_unchecked(t_lo) / pi)) + 1;
    N = std::max<std::int64_t>(N, -1);
    for (;; ++N) {
        const double g = gram_point(N).t;
        if (g >= t_hi) break;
        if (g > cuts.back()) cuts.push_back(g);
    }
    cuts.push_back(t_hi);

    const std::size_t pieces = cuts.size() - 1;
    std::vector<std::vector<Bracket>> found(pieces);
    parallel_for(pieces, workers, [&](std::size_t i) {
        found[i] = detail::scan_interval(cuts[i], cuts[i + 1], subdivisions_per_gram, &detail::rs_z_default);
    });

    const double theta_lo = detail::theta_unchecked(t_lo);
    std::vector<Bracket> out;
    for (std::size_t i = 0; i < pieces; ++i) {
        const double expected = (detail::theta_unchecked(cuts[i + 1]) - theta_lo) / pi;
        const double have = static_cast<double>(out.size() + found[i].size());
        if (expected - have >= 2.0)
            found[i] = detail::scan_interval(cuts[i], cuts[i + 1], 4 * subdivisions_per_gram,
                                             &detail::rs_z_default);
        out.insert(out.end(), found[i].begin(), found[i].end());
    }
    return out;
}

enum class ZSource {
    reference, ///< Re(e^{i theta} zeta) from the Euler-Maclaurin oracle
    rs_line,   ///< first-order rs_z, (t / 2 pi)^{-1/4} remainder scale
};

inline constexpr double min_refine_tol = 1e-10;

/// Shrinks a sign-change bracket to width <= tol by Illinois steps, with a
/// bisection every third step, keeping the sign change inside throughout.
/// The returned ordinate is the midpoint of the final bracket.
inline ZeroRecord refine_zero(Bracket b, double tol, ZSource source = ZSource::reference,
                              std::int64_t ordinal = 1) {
    if (!(tol >= min_refine_tol)) throw domain_error("refine_zero: tol must be >= 1e-10");
    if (!(b.hi > b.lo)) throw domain_error("refine_zero: empty bracket");
    double (*z)(double) = source == ZSource::reference ? &detail::z_reference_default : &detail::rs_z_default;

    double flo = z(b.lo);
    double fhi = z(b.hi);
    if ((flo < 0.0) == (fhi < 0.0))
        throw domain_error("refine_zero: Z has the same sign at both ends of the bracket");

    int side = 0;
    for (int it = 1; b.hi - b.lo > tol; ++it) {
        double x;
        if (it % 3 == 0) {
            x = 0.5 * (b.lo + b.hi);
        } else {
            x = b.lo - flo * (b.hi - b.lo) / (fhi - flo);
            const double margin = 0.5 * tol;
            x = std::clamp(x, b.lo + margin, b.hi - margin);
            if (!(x > b.lo && x < b.hi)) x = 0.5 * (b.lo + b.hi);
        }
        const double fx = z(x);
        if ((fx < 0.0) == (flo < 0.0)) {
            b.lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            b.hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }

    ZeroRecord r;
    r.ordinal = ordinal;
    r.t = 0.5 * (b.lo + b.hi);
    r.bracket = b;
    r.gram_index = gram_interval_index(r.t);
    r.scaled_offset = gram_offset(r.t, r.gram_index);
    return r;
}

/// Smooth main term of the zero-counting function, theta(T) / pi + 1.
inline double zero_count_main(double T) {
    if (!(T >= 10.0)) throw domain_error("zero_count_main requires T >= 10");
    return rs_theta(T) / pi + 1.0;
}

struct ZeroSearchOptions {
    int subdivisions_per_gram = default_subdivisions_per_gram;
    double tol = 1e-10;
    unsigned workers = 1;
    bool certify = true; ///< fill in residual from the reference oracle
};

/// Zeros of zeta(1/2 + i t) for t in [t_lo, t_hi].
///
/// Brackets come from the fast rs_z scan; each is then checked against the
/// reference Z. Where the two disagree the neighbourhood is rescanned with
/// the reference Z itself, so first-order error in rs_z cannot mislabel a
/// zero. Ordinals count from the first zero above t_lo.
inline std::vector<ZeroRecord> find_zeros(double t_lo, double t_hi, const ZeroSearchOptions& opt = {}) {
    if (!(t_lo >= rs_theta_min_t)) throw domain_error("find_zeros requires t_lo >= 10");
    const std::vector<Bracket> scanned = scan_z_sign_changes(t_lo, t_hi, opt.subdivisions_per_gram, opt.workers);

    std::vector<std::vector<ZeroRecord>> refined(scanned.size());
    parallel_for(scanned.size(), opt.workers, [&](std::size_t i) {
        const Bracket b = scanned[i];
        std::vector<Bracket> good;
        if ((z_reference(b.lo) < 0.0) != (z_reference(b.hi) < 0.0)) {
            good.push_back(b);
        } else {
            const double w = b.hi - b.lo;
            const double lo = std::max(t_lo, b.lo - w);
            const double hi = std::min(t_hi, b.hi + w);
            good = detail::scan_interval(lo, hi, 4 * opt.subdivisions_per_gram, &detail::z_reference_default);
        }
        for (const Bracket& g : good) {
            ZeroRecord r = refine_zero(g, opt.tol, ZSource::reference);
            if (opt.certify) r.residual = std::abs(eval_reference({0.5, r.t}, {1e-11}).value);
            refined[i].push_back(r);
        }
    });

    std::vector<ZeroRecord> out;
    for (auto& v : refined) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.t < b.t; });
    const double dup = std::max(1e-6, 10.0 * opt.tol);
    std::vector<ZeroRecord> unique;
    for (const ZeroRecord& r : out) {
        if (!unique.empty() && r.t - unique.back().t <= dup) continue;
        unique.push_back(r);
    }
    for (std::size_t i = 0; i < unique.size(); ++i) unique[i].ordinal = static_cast<std::int64_t>(i) + 1;
    return unique;
}

/// The first `count` zeros above t = 10 (ordinals are then the usual ones).
inline std::vector<ZeroRecord> first_zeros(std::int64_t count, const ZeroSearchOptions& opt = {}) {
    if (count < 1) throw domain_error("first_zeros: count must be >= 1");
    std::int64_t margin = 8;
    for (;;) {
        const double t_hi = gram_point(count + margin).t;
        std::vector<ZeroRecord> z = find_zeros(rs_theta_min_t, t_hi, opt);
        if (static_cast<std::int64_t>(z.size()) >= count) {
            z.resize(static_cast<std::size_t>(count));
            return z;
        }
        margin *= 2;
    }
}

/// Scaled offsets of zeros from the midpoints of their Gram intervals.
inline std::vector<double> gram_offsets(const std::vector<ZeroRecord>& zeros) {
    std::vector<double> out;
    out.reserve(zeros.size());
    for (const ZeroRecord& z : zeros) out.push_back(gram_offset(z.t, gram_interval_index(z.t)));
    return out;
}

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::int64_t> counts;

    double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
};

/// Equal-width histogram over [-max |v|, +max |v|]; the top edge falls in
/// the last bin.
inline Histogram histogram(const std::vector<double>& values, int bins) {
    if (bins < 1) throw domain_error("histogram: bins must be >= 1");
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    Histogram h;
    h.lo = -m;
    h.hi = m;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        std::size_t k;
        if (m == 0.0) {
            k = static_cast<std::size_t>(bins / 2);
        } else {
            const double pos = (v + m) / (2.0 * m) * bins;
            k = static_cast<std::size_t>(std::clamp(static_cast<int>(std::floor(pos)), 0, bins - 1));
        }
        ++h.counts[k];
    }
    return h;
}

} // namespace zsym
