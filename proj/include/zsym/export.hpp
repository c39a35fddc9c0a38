#pragma once

// Row emitters for the step plot, limacon, |P| surface, Euler-Maclaurin
// loops, zero lists and Gram-offset histograms. Output is CSV or JSON lines
// with a fixed column order per kind and 15 significant digits.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "zsym/core.hpp"
#include "zsym/errors.hpp"
#include "zsym/evaluators.hpp"
#include "zsym/parallel.hpp"
#include "zsym/steps.hpp"
#include "zsym/symmetry.hpp"
#include "zsym/zeros.hpp"

namespace zsym {

enum class Format { csv, json_lines };

/// A single field: a real, an integer, a bare word, or empty.
using Cell = std::variant<double, std::int64_t, std::string, std::monostate>;

class RowWriter {
public:
    RowWriter(std::ostream& out, Format format, std::vector<std::string> columns)
        : out_(out), format_(format), columns_(std::move(columns)) {
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
            out_ << '\n';
        }
    }

    void row(const std::vector<Cell>& cells) {
        if (cells.size() != columns_.size()) throw domain_error("RowWriter: cell count does not match header");
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << render(cells[i], false);
        } else {
            out_ << '{';
            for (std::size_t i = 0; i < cells.size(); ++i)
                out_ << (i ? "," : "") << '"' << columns_[i] << "\":" << render(cells[i], true);
            out_ << '}';
        }
        out_ << '\n';
        ++rows_;
    }

    std::int64_t rows() const { return rows_; }

    static std::string format_real(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return buf;
    }

private:
    static std::string render(const Cell& c, bool json) {
        if (const double* d = std::get_if<double>(&c)) {
            if (!std::isfinite(*d)) return json ? "null" : (std::isnan(*d) ? "nan" : (*d > 0 ? "inf" : "-inf"));
            return format_real(*d);
        }
        if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
        if (const std::string* s = std::get_if<std::string>(&c)) return json ? '"' + *s + '"' : *s;
        return json ? "null" : "";
    }

    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
    std::int64_t rows_ = 0;
};

enum class ExportKind { stepplot, limacon, surface, loops, zeros, histogram };

/// Everything needed to produce one export.
struct ExportSpec {
    ExportKind kind = ExportKind::stepplot;
    std::vector<double> sigmas{0.5};  ///< loops: one block per entry; others use the first
    double t = 0.0;                   ///< stepplot ordinate
    double t_lo = 0.0;
    double t_hi = 0.0;
    double sigma_lo = 0.0;            ///< surface
    double sigma_hi = 1.0;
    std::int64_t n_sigma = 2;
    std::int64_t n_t = 2;
    std::int64_t samples = 2;         ///< limacon / loops
    std::int64_t decimation = 1;      ///< stepplot
    std::int64_t count = 0;           ///< zeros / histogram: first `count` zeros (0: use t_hi)
    int bins = 8;
    Format format = Format::csv;
    unsigned workers = 1;

    void validate() const {
        switch (kind) {
        case ExportKind::stepplot:
            if (decimation < 1) throw domain_error("decimation must be >= 1");
            break;
        case ExportKind::limacon:
        case ExportKind::loops:
            if (samples < 1) throw domain_error("samples must be >= 1");
            if (!(t_lo <= t_hi)) throw domain_error("t_lo must not exceed t_hi");
            if (samples > 1 && !(t_lo < t_hi)) throw domain_error("t_lo < t_hi required");
            break;
        case ExportKind::surface:
            if (n_sigma < 2 || n_t < 2) throw domain_error("grid counts must be >= 2");
            if (!(t_lo < t_hi) || !(sigma_lo < sigma_hi)) throw domain_error("empty surface range");
            break;
        case ExportKind::zeros:
        case ExportKind::histogram:
            if (count < 0) throw domain_error("count must be >= 0");
            if (count == 0 && !(t_hi > 10.0)) throw domain_error("give a zero count or t_hi > 10");
            if (kind == ExportKind::histogram && bins < 1) throw domain_error("bins must be >= 1");
            break;
        }
        if (sigmas.empty()) throw domain_error("at least one sigma is required");
    }
};

inline constexpr std::int64_t max_export_rows = 10'000'000;
inline constexpr std::int64_t max_surface_points = 1'000'000;

namespace detail {

/// Node i of `count` equally spaced points over [lo, hi]; exact at both ends.
inline double grid_node(double lo, double hi, std::int64_t i, std::int64_t count) {
    if (count == 1) return lo;
    const double d = static_cast<double>(count - 1);
    return (static_cast<double>(count - 1 - i) * lo + static_cast<double>(i) * hi) / d;
}

} // namespace detail

/// Step plot rows (n, re, im, delta1_mod, delta2_mod) for n = 1..floor(t/pi).
/// Keeps every decimation-th step (n = 1, 1 + d, ...), every step with
/// n <= 3 n_p (the pendant window |n - n_p| <= 2 n_p), and the final step.
inline std::int64_t export_stepplot(const Argument& s, std::int64_t decimation, std::ostream& out, Format fmt) {
    if (decimation < 1) throw domain_error("decimation must be >= 1");
    const SymmetryFrame f = frame_of(s.t, s.sigma);
    const std::int64_t last = detail::snap_floor(s.t / pi);
    if (last / decimation > max_export_rows)
        throw range_error("stepplot would emit " + std::to_string(last / decimation) +
                          " rows; use a larger decimation");
    const std::int64_t window_hi = 3 * f.n_p;
    RowWriter w(out, fmt, {"n", "re", "im", "delta1_mod", "delta2_mod"});
    walk_steps(1, last, s, [&](const StepRecord& r) {
        const bool keep = (r.n - 1) % decimation == 0 || r.n <= window_hi || r.n == last;
        if (!keep) return;
        const AngleDiffs d = angle_diffs(r.n, s.t);
        w.row({r.n, r.cumulative.real(), r.cumulative.imag(), d.delta1_mod, d.delta2_mod});
    });
    return w.rows();
}

/// Limacon rows: P(s), Q(s) P(1 - s) and their sum zeta along t, followed
/// in t order by tagged rows at each Gram point in [t_lo, t_hi].
inline std::int64_t export_limacon(double sigma, double t_lo, double t_hi, std::int64_t samples, std::ostream& out,
                                   Format fmt, unsigned workers = 1) {
    if (samples < 1) throw domain_error("samples must be >= 1");
    if (!(t_lo <= t_hi)) throw domain_error("t_lo must not exceed t_hi");

    struct Row {
        bool gram = false;
        std::int64_t index = -1;
        double t = 0.0;
        complex p, qp, zeta;
    };
    std::vector<Row> rows;
    for (std::int64_t i = 0; i < samples; ++i) rows.push_back({false, -1, detail::grid_node(t_lo, t_hi, i, samples), {}, {}, {}});
    if (t_lo >= rs_theta_min_t) {
        auto N = static_cast<std::int64_t>(std::floor(rs_theta(t_lo) / pi));
        N = std::max<std::int64_t>(N, -1);
        for (;; ++N) {
            const GramPoint g = gram_point(N);
            if (g.t > t_hi) break;
            if (g.t >= t_lo) rows.push_back({true, g.index, g.t, {}, {}, {}});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });

    parallel_for(rows.size(), workers, [&](std::size_t i) {
        Row& r = rows[i];
        const Argument s{sigma, r.t};
        r.p = center_point(s).value;
        r.qp = big_q(s) * std::conj(center_point(mirrored(s)).value);
        r.zeta = r.p + r.qp;
    });

    RowWriter w(out, fmt, {"kind", "gram_index", "t", "P_re", "P_im", "QP1s_re", "QP1s_im", "zeta_re", "zeta_im"});
    for (const Row& r : rows) {
        w.row({std::string(r.gram ? "gram" : "sample"), r.gram ? Cell{r.index} : Cell{std::monostate{}}, r.t,
               r.p.real(), r.p.imag(), r.qp.real(), r.qp.imag(), r.zeta.real(), r.zeta.imag()});
    }
    return w.rows();
}

/// |P(s)| and |Q(s) P(1 - s)| over a sigma x t grid, sigma outermost.
inline std::int64_t export_surface(double sigma_lo, double sigma_hi, double t_lo, double t_hi, std::int64_t n_sigma,
                                   std::int64_t n_t, std::ostream& out, Format fmt, unsigned workers = 1) {
    if (n_sigma < 2 || n_t < 2) throw domain_error("grid counts must be >= 2");
    if (n_sigma > max_surface_points / n_t) throw range_error("surface grid exceeds 1e6 points");
    const auto total = static_cast<std::size_t>(n_sigma * n_t);
    std::vector<double> abs_p(total), abs_qp(total);
    parallel_for(total, workers, [&](std::size_t k) {
        const auto i = static_cast<std::int64_t>(k) / n_t;
        const auto j = static_cast<std::int64_t>(k) % n_t;
        const Argument s{detail::grid_node(sigma_lo, sigma_hi, i, n_sigma), detail::grid_node(t_lo, t_hi, j, n_t)};
        abs_p[k] = std::abs(center_point(s).value);
        abs_qp[k] = std::abs(big_q(s)) * std::abs(center_point(mirrored(s)).value);
    });
    RowWriter w(out, fmt, {"sigma", "t", "abs_P", "abs_QP1s"});
    for (std::size_t k = 0; k < total; ++k) {
        const auto i = static_cast<std::int64_t>(k) / n_t;
        const auto j = static_cast<std::int64_t>(k) % n_t;
        w.row({detail::grid_node(sigma_lo, sigma_hi, i, n_sigma), detail::grid_node(t_lo, t_hi, j, n_t), abs_p[k],
               abs_qp[k]});
    }
    return w.rows();
}

/// Euler-Maclaurin trajectories zeta(sigma + i t), one block per sigma.
inline std::int64_t export_loops(const std::vector<double>& sigmas, double t_lo, double t_hi, std::int64_t samples,
                                 std::ostream& out, Format fmt, unsigned workers = 1) {
    if (samples < 1) throw domain_error("samples must be >= 1");
    const auto per = static_cast<std::size_t>(samples);
    if (sigmas.size() * per > static_cast<std::size_t>(max_export_rows)) throw range_error("too many loop samples");
    std::vector<complex> values(sigmas.size() * per);
    parallel_for(values.size(), workers, [&](std::size_t k) {
        const double t = detail::grid_node(t_lo, t_hi, static_cast<std::int64_t>(k % per), samples);
        values[k] = eval_em_paper({sigmas[k / per], t}).value;
    });
    RowWriter w(out, fmt, {"sigma", "t", "zeta_re", "zeta_im"});
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double t = detail::grid_node(t_lo, t_hi, static_cast<std::int64_t>(k % per), samples);
        w.row({sigmas[k / per], t, values[k].real(), values[k].imag()});
    }
    return w.rows();
}

/// The zero list for `count` > 0 (first zeros) or all zeros in [10, t_hi].
inline std::vector<ZeroRecord> collect_zeros(std::int64_t count, double t_hi, unsigned workers) {
    ZeroSearchOptions opt;
    opt.workers = workers;
    return count > 0 ? first_zeros(count, opt) : find_zeros(rs_theta_min_t, t_hi, opt);
}

inline std::int64_t write_zeros(const std::vector<ZeroRecord>& zeros, std::ostream& out, Format fmt) {
    RowWriter w(out, fmt, {"ordinal", "t", "gram_index", "scaled_offset", "residual"});
    for (const ZeroRecord& z : zeros) w.row({z.ordinal, z.t, z.gram_index, z.scaled_offset, z.residual});
    return w.rows();
}

inline std::int64_t export_zeros(std::int64_t count, double t_hi, std::ostream& out, Format fmt,
                                 unsigned workers = 1) {
    return write_zeros(collect_zeros(count, t_hi, workers), out, fmt);
}

inline std::int64_t write_histogram(const Histogram& h, std::ostream& out, Format fmt) {
    RowWriter w(out, fmt, {"bin_center", "count"});
    for (std::size_t i = 0; i < h.counts.size(); ++i) w.row({h.center(i), h.counts[i]});
    return w.rows();
}

inline std::int64_t export_histogram(std::int64_t count, double t_hi, int bins, std::ostream& out, Format fmt,
                                     unsigned workers = 1) {
    const std::vector<ZeroRecord> zeros = collect_zeros(count, t_hi, workers);
    return write_histogram(histogram(gram_offsets(zeros), bins), out, fmt);
}

/// Runs the export described by `spec`.
inline std::int64_t run_export(const ExportSpec& spec, std::ostream& out) {
    spec.validate();
    const double sigma = spec.sigmas.front();
    switch (spec.kind) {
    case ExportKind::stepplot:
        return export_stepplot({sigma, spec.t}, spec.decimation, out, spec.format);
    case ExportKind::limacon:
        return export_limacon(sigma, spec.t_lo, spec.t_hi, spec.samples, out, spec.format, spec.workers);
    case ExportKind::surface:
        return export_surface(spec.sigma_lo, spec.sigma_hi, spec.t_lo, spec.t_hi, spec.n_sigma, spec.n_t, out,
                              spec.format, spec.workers);
    case ExportKind::loops:
        return export_loops(spec.sigmas, spec.t_lo, spec.t_hi, spec.samples, out, spec.format, spec.workers);
    case ExportKind::zeros:
        return export_zeros(spec.count, spec.t_hi, out, spec.format, spec.workers);
    case ExportKind::histogram:
        return export_histogram(spec.count, spec.t_hi, spec.bins, out, spec.format, spec.workers);
    }
    throw domain_error("unknown export kind");
}

} // namespace zsym
