// zsym command-line front end.

#include <zsym/zsym.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace zsym;

struct Options {
    std::vector<double> sigmas;
    double t = 0.0;
    double t_lo = 10.0;
    double t_hi = 0.0;
    double sigma_lo = 0.0;
    double sigma_hi = 1.0;
    std::int64_t n_sigma = 51;
    std::int64_t n_t = 101;
    std::int64_t n_lo = 1;
    std::int64_t n_hi = 0;
    std::int64_t count = 0;
    std::int64_t samples = 1000;
    std::int64_t decimation = 1;
    int bins = 8;
    double tol = 1e-10;
    Algorithm algorithm = Algorithm::reference;
    Format format = Format::csv;
    std::string out;
    unsigned workers = 0;

    double sigma() const { return sigmas.empty() ? 0.5 : sigmas.front(); }
};

std::string flag_names(Flags f) {
    std::string s;
    if (f.has(Flag::degenerate_p)) s += "degenerate_p";
    if (f.has(Flag::accuracy_unguaranteed)) s += std::string(s.empty() ? "" : "|") + "accuracy_unguaranteed";
    return s;
}

void run_eval(const Options& o, std::ostream& out) {
    ReferenceOptions ro;
    ro.target_abs_error = o.tol;
    const Argument s{o.sigma(), o.t};
    const EvalResult r = evaluate(s, o.algorithm, ro);
    RowWriter w(out, o.format,
                {"sigma", "t", "algorithm", "re", "im", "abs", "terms_used", "flags", "error_estimate"});
    w.row({s.sigma, s.t, std::string(to_string(r.algorithm)), r.value.real(), r.value.imag(), std::abs(r.value),
           r.terms_used, flag_names(r.flags), r.error_estimate});
}

void run_zeros(const Options& o, std::ostream& out) {
    ZeroSearchOptions zo;
    zo.tol = o.tol;
    zo.workers = o.workers;
    if (o.count > 0) {
        write_zeros(first_zeros(o.count, zo), out, o.format);
        return;
    }
    if (!(o.t_hi > o.t_lo)) throw domain_error("zeros: give --count or --t-hi > --t-lo");
    write_zeros(find_zeros(o.t_lo, o.t_hi, zo), out, o.format);
}

void run_gram(const Options& o, std::ostream& out) {
    const std::int64_t hi = o.n_hi > 0 ? o.n_hi : o.n_lo + 9;
    if (o.n_lo < -1 || hi < o.n_lo) throw domain_error("gram: need -1 <= n-lo <= n-hi");
    if (hi - o.n_lo >= max_export_rows) throw range_error("gram: too many rows");
    RowWriter w(out, o.format, {"index", "t"});
    for (std::int64_t n = o.n_lo; n <= hi; ++n) w.row({n, gram_point(n).t});
}

void run_conjugate(const Options& o, std::ostream& out) {
    const Argument s{o.sigma(), o.t};
    const SymmetryFrame f = frame_of(o.t, s.sigma);
    const std::int64_t hi = o.n_hi > 0 ? o.n_hi : std::min<std::int64_t>(f.n_p, o.n_lo + 9);
    if (o.n_lo < 1 || o.n_lo > f.n_p || hi < o.n_lo)
        throw domain_error("conjugate: need 1 <= n-lo <= n-hi <= n_p = " + std::to_string(f.n_p));
    RowWriter w(out, o.format,
                {"n", "N_lo", "N_center", "N_hi", "width", "direct_re", "direct_im", "predicted_re", "predicted_im",
                 "rel_modulus_error", "flags"});
    for (std::int64_t n = o.n_lo; n <= hi; ++n) {
        const ConjugateRegion r = conj_region(n, o.t);
        const complex d = conj_sum_direct(n, s);
        const Flagged<complex> p = conj_sum_predicted(n, s);
        const double rel = std::abs(d) / std::abs(p.value) - 1.0;
        w.row({n, r.N_lo, r.N_center, r.N_hi, r.width, d.real(), d.imag(), p.value.real(), p.value.imag(), rel,
               flag_names(p.flags)});
    }
}

void run_histogram(const Options& o, std::ostream& out) {
    if (o.count <= 0 && !(o.t_hi > rs_theta_min_t)) throw domain_error("histogram: give --count or --t-hi > 10");
    export_histogram(o.count, o.t_hi, o.bins, out, o.format, o.workers);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Step-plot symmetry analysis of partial sums of n^-s"};
    app.require_subcommand(1);
    Options o;

    const std::map<std::string, Algorithm> algorithms{{"em_paper", Algorithm::em_paper},
                                                      {"reference", Algorithm::reference},
                                                      {"symmetric", Algorithm::symmetric},
                                                      {"rs_line", Algorithm::rs_line}};
    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"jsonl", Format::json_lines},
                                                {"json-lines", Format::json_lines}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "csv or jsonl")->transform(CLI::CheckedTransformer(formats));
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--workers", o.workers, "worker threads, 0 = available parallelism");
    };

    auto* eval = app.add_subcommand("eval", "evaluate zeta at one point");
    eval->add_option("--sigma", o.sigmas, "real part")->expected(1);
    eval->add_option("--t", o.t, "imaginary part")->required();
    eval->add_option("--algorithm", o.algorithm, "em_paper, reference, symmetric or rs_line")
        ->transform(CLI::CheckedTransformer(algorithms));
    eval->add_option("--tol", o.tol, "target absolute error of the reference evaluator");
    common(eval);

    auto* zeros = app.add_subcommand("zeros", "locate zeros on the critical line");
    zeros->add_option("--t-lo", o.t_lo, "lower ordinate (>= 10)");
    zeros->add_option("--t-hi", o.t_hi, "upper ordinate");
    zeros->add_option("--count", o.count, "first COUNT zeros instead of a range");
    zeros->add_option("--tol", o.tol, "bracket width (>= 1e-10)");
    common(zeros);

    auto* gram = app.add_subcommand("gram", "list Gram points");
    gram->add_option("--n-lo", o.n_lo, "first index (>= -1)");
    gram->add_option("--n-hi", o.n_hi, "last index (default n-lo + 9)");
    common(gram);

    auto* conjugate = app.add_subcommand("conjugate", "conjugate-region report");
    conjugate->add_option("--sigma", o.sigmas, "real part")->expected(1);
    conjugate->add_option("--t", o.t, "ordinate")->required();
    conjugate->add_option("--n-lo", o.n_lo, "first initial step");
    conjugate->add_option("--n-hi", o.n_hi, "last initial step (default min(n_p, n-lo + 9))");
    common(conjugate);

    auto* stepplot = app.add_subcommand("stepplot", "cumulative step plot");
    stepplot->add_option("--sigma", o.sigmas, "real part")->expected(1);
    stepplot->add_option("--t", o.t, "ordinate")->required();
    stepplot->add_option("--decimation", o.decimation, "keep every k-th step outside the pendant window");
    common(stepplot);

    auto* limacon = app.add_subcommand("limacon", "P(s), Q(s)P(1-s) and zeta along t");
    limacon->add_option("--sigma", o.sigmas, "real part")->expected(1);
    limacon->add_option("--t-lo", o.t_lo)->required();
    limacon->add_option("--t-hi", o.t_hi)->required();
    limacon->add_option("--samples", o.samples);
    common(limacon);

    auto* surface = app.add_subcommand("surface", "|P| and |Q P(1-s)| over a sigma x t grid");
    surface->add_option("--sigma-lo", o.sigma_lo);
    surface->add_option("--sigma-hi", o.sigma_hi);
    surface->add_option("--t-lo", o.t_lo)->required();
    surface->add_option("--t-hi", o.t_hi)->required();
    surface->add_option("--n-sigma", o.n_sigma);
    surface->add_option("--n-t", o.n_t);
    common(surface);

    auto* loops = app.add_subcommand("loops", "Euler-Maclaurin trajectories, one block per sigma");
    loops->add_option("--sigma", o.sigmas, "real part, repeatable");
    loops->add_option("--t-lo", o.t_lo)->required();
    loops->add_option("--t-hi", o.t_hi)->required();
    loops->add_option("--samples", o.samples);
    common(loops);

    auto* hist = app.add_subcommand("histogram", "Gram-offset histogram of zeros");
    hist->add_option("--count", o.count, "first COUNT zeros");
    hist->add_option("--t-hi", o.t_hi, "all zeros up to t-hi");
    hist->add_option("--bins", o.bins);
    common(hist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::unique_ptr<std::ofstream> file;
        if (!o.out.empty()) {
            file = std::make_unique<std::ofstream>(o.out, std::ios::binary | std::ios::trunc);
            if (!*file) throw std::runtime_error("cannot open " + o.out);
        }
        std::ostream& out = file ? *file : std::cout;

        if (*eval) run_eval(o, out);
        else if (*zeros) run_zeros(o, out);
        else if (*gram) run_gram(o, out);
        else if (*conjugate) run_conjugate(o, out);
        else if (*stepplot) export_stepplot({o.sigma(), o.t}, o.decimation, out, o.format);
        else if (*limacon) export_limacon(o.sigma(), o.t_lo, o.t_hi, o.samples, out, o.format, o.workers);
        else if (*surface)
            export_surface(o.sigma_lo, o.sigma_hi, o.t_lo, o.t_hi, o.n_sigma, o.n_t, out, o.format, o.workers);
        else if (*loops)
            export_loops(o.sigmas.empty() ? std::vector<double>{0.5} : o.sigmas, o.t_lo, o.t_hi, o.samples, out,
                         o.format, o.workers);
        else if (*hist) run_histogram(o, out);

        out.flush();
        if (!out) throw std::runtime_error("write failed");
    } catch (const zsym::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const zsym::range_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
