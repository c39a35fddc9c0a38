#include <gtest/gtest.h>

#include <zsym/export.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace zsym;

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::out_of_range(name);
    }
    double num(std::size_t r, const std::string& name) const { return std::stod(rows[r][col(name)]); }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Table parse_csv(const std::string& text) {
    Table t;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);
    t.header = split(line);
    while (std::getline(ss, line)) t.rows.push_back(split(line));
    return t;
}

template <class F>
std::string capture(F&& f) {
    std::ostringstream os;
    f(os);
    return os.str();
}

} // namespace

TEST(RowWriter, CsvAndJsonLines) {
    const std::string csv = capture([](std::ostream& os) {
        RowWriter w(os, Format::csv, {"a", "b", "c", "d"});
        w.row({1.0 / 3.0, std::int64_t{7}, std::string("gram"), std::monostate{}});
    });
    EXPECT_EQ(csv, "a,b,c,d\n0.333333333333333,7,gram,\n");
    const std::string js = capture([](std::ostream& os) {
        RowWriter w(os, Format::json_lines, {"a", "b", "c", "d"});
        w.row({1.0 / 3.0, std::int64_t{7}, std::string("gram"), std::monostate{}});
    });
    const auto j = nlohmann::json::parse(js);
    EXPECT_DOUBLE_EQ(j["a"].get<double>(), 0.333333333333333);
    EXPECT_EQ(j["b"].get<int>(), 7);
    EXPECT_EQ(j["c"].get<std::string>(), "gram");
    EXPECT_TRUE(j["d"].is_null());
    std::ostringstream os;
    RowWriter w(os, Format::csv, {"x"});
    EXPECT_THROW(w.row({1.0, 2.0}), zsym::domain_error);
    EXPECT_EQ(capture([](std::ostream& o) { RowWriter(o, Format::csv, {"x", "y"}); }), "x,y\n");
}

TEST(Stepplot, FullRowsAndFinalCumulative) {
    const Argument s{0.5, two_pi * 1e4};
    const Table t = parse_csv(capture([&](std::ostream& os) { export_stepplot(s, 1, os, Format::csv); }));
    EXPECT_EQ(t.header, (std::vector<std::string>{"n", "re", "im", "delta1_mod", "delta2_mod"}));
    ASSERT_EQ(t.rows.size(), 20000u);
    const complex last = partial_sum(1, 20000, s);
    EXPECT_NEAR(t.num(19999, "re"), last.real(), 1e-13);
    EXPECT_NEAR(t.num(19999, "im"), last.imag(), 1e-13);
}

TEST(Stepplot, DecimationKeepsPendantWindow) {
    const Argument s{0.5, 1e6};
    const Table t = parse_csv(capture([&](std::ostream& os) { export_stepplot(s, 10, os, Format::csv); }));
    const std::int64_t np = frame_of(1e6).n_p;
    std::vector<std::int64_t> ns;
    for (const auto& r : t.rows) ns.push_back(std::stoll(r[0]));
    for (std::int64_t n = 1; n <= 3 * np; ++n) ASSERT_TRUE(std::binary_search(ns.begin(), ns.end(), n)) << n;
    EXPECT_EQ(ns.back(), static_cast<std::int64_t>(std::floor(1e6 / M_PI)));
    const double d2 = t.num(static_cast<std::size_t>(np - 1), "delta2_mod");
    EXPECT_LT(std::fmin(std::fabs(d2 - two_pi), d2), 0.01);
    EXPECT_THROW(export_stepplot({0.5, 4e7}, 1, std::cout, Format::csv), zsym::range_error);
    EXPECT_THROW(export_stepplot(s, 0, std::cout, Format::csv), zsym::domain_error);
}

TEST(Limacon, IdentityAndGramRows) {
    const double lo = gram_point(1000).t - 0.01, hi = gram_point(1004).t + 0.01;
    const Table t = parse_csv(capture([&](std::ostream& os) { export_limacon(0.5, lo, hi, 40, os, Format::csv, 2); }));
    ASSERT_EQ(t.rows.size(), 45u);
    std::vector<std::int64_t> gram;
    std::int64_t sample = 0;
    double prev = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        EXPECT_GE(t.num(r, "t"), prev);
        prev = t.num(r, "t");
        // Q needs the unrounded ordinate; the t column carries 15 digits.
        double tt;
        if (t.rows[r][t.col("kind")] == "gram") {
            gram.push_back(std::stoll(t.rows[r][t.col("gram_index")]));
            tt = gram_point(gram.back()).t;
        } else {
            tt = detail::grid_node(lo, hi, sample++, 40);
        }
        const complex P(t.num(r, "P_re"), t.num(r, "P_im"));
        const complex QP(t.num(r, "QP1s_re"), t.num(r, "QP1s_im"));
        const complex Z(t.num(r, "zeta_re"), t.num(r, "zeta_im"));
        EXPECT_LT(std::abs(QP - big_q({0.5, tt}) * std::conj(P)), 1e-12);
        EXPECT_LT(std::abs(Z - (P + QP)), 1e-12);
    }
    EXPECT_EQ(sample, 40);
    EXPECT_EQ(gram, (std::vector<std::int64_t>{1000, 1001, 1002, 1003, 1004}));
}

TEST(Limacon, ZetaColumnTracksReference) {
    const Table t = parse_csv(capture([](std::ostream& os) { export_limacon(0.5, 2000.0, 2010.0, 10, os, Format::csv); }));
    ASSERT_GE(t.rows.size(), 10u);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double tt = t.num(r, "t");
        if (!eval_symmetric({0.5, tt}).flags.empty()) continue;
        const complex Z(t.num(r, "zeta_re"), t.num(r, "zeta_im"));
        EXPECT_LT(std::abs(Z - eval_reference({0.5, tt}).value), symmetric_tolerance) << tt;
    }
}

TEST(Surface, EqualOnCriticalLineAndMirrorConsistent) {
    const Table t = parse_csv(capture([](std::ostream& os) { export_surface(0.3, 0.7, 124.0, 129.0, 3, 11, os, Format::csv, 3); }));
    EXPECT_EQ(t.header, (std::vector<std::string>{"sigma", "t", "abs_P", "abs_QP1s"}));
    ASSERT_EQ(t.rows.size(), 33u);
    for (std::size_t j = 0; j < 11; ++j) {
        const std::size_t lo = j, mid = 11 + j, hi = 22 + j;
        EXPECT_EQ(t.num(mid, "sigma"), 0.5);
        EXPECT_LT(std::fabs(t.num(mid, "abs_P") - t.num(mid, "abs_QP1s")), 1e-12);
        const double tt = t.num(lo, "t");
        const double q = std::abs(big_q({0.7, tt}));
        EXPECT_NEAR(t.num(lo, "abs_P"), t.num(hi, "abs_QP1s") / q, 1e-12);
    }
}

TEST(Surface, TransverseCrossingAtTheCriticalLine) {
    for (double tt : {120.5, 122.0, 124.0, 126.0, 128.5}) {
        const Table t = parse_csv(capture([&](std::ostream& os) { export_surface(0.45, 0.55, tt, tt + 1e-9, 3, 2, os, Format::csv); }));
        const double below = t.num(0, "abs_P") - t.num(0, "abs_QP1s");
        const double above = t.num(4, "abs_P") - t.num(4, "abs_QP1s");
        EXPECT_LT(below * above, 0.0) << tt;
    }
}

TEST(Surface, Guards) {
    EXPECT_THROW(export_surface(0.1, 0.9, 100.0, 200.0, 1, 5, std::cout, Format::csv), zsym::domain_error);
    EXPECT_THROW(export_surface(0.1, 0.9, 100.0, 200.0, 2000, 1000, std::cout, Format::csv), zsym::range_error);
}

TEST(Loops, BlocksAndSingleSample) {
    const Table t = parse_csv(capture([](std::ostream& os) { export_loops({0.5, 0.505}, 2000.0, 2010.0, 100, os, Format::csv, 2); }));
    ASSERT_EQ(t.rows.size(), 200u);
    EXPECT_EQ(t.num(0, "sigma"), 0.5);
    EXPECT_EQ(t.num(100, "sigma"), 0.505);
    EXPECT_EQ(t.num(99, "t"), 2010.0);
    const Table one = parse_csv(capture([](std::ostream& os) { export_loops({0.5}, 2003.0, 2003.0, 1, os, Format::csv); }));
    ASSERT_EQ(one.rows.size(), 1u);
    const complex z = eval_em_paper({0.5, 2003.0}).value;
    EXPECT_EQ(one.rows[0][2], RowWriter::format_real(z.real()));
    EXPECT_EQ(one.rows[0][3], RowWriter::format_real(z.imag()));
}

TEST(Zeros, FirstThreeAndResiduals) {
    const Table t = parse_csv(capture([](std::ostream& os) { export_zeros(3, 0.0, os, Format::csv); }));
    EXPECT_EQ(t.header, (std::vector<std::string>{"ordinal", "t", "gram_index", "scaled_offset", "residual"}));
    ASSERT_EQ(t.rows.size(), 3u);
    const double want[3] = {14.134725, 21.022040, 25.010858};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(t.num(i, "t"), want[i], 1e-6);
        EXPECT_LT(t.num(i, "residual"), 1e-5);
    }
    const std::string js = capture([](std::ostream& os) { export_zeros(0, 30.0, os, Format::json_lines); });
    std::stringstream ss(js);
    std::string line;
    int n = 0;
    while (std::getline(ss, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["ordinal"].get<int>(), ++n);
    }
    EXPECT_EQ(n, 3);
}

TEST(HistogramExport, SingleBinHoldsEverything) {
    const Table t = parse_csv(capture([](std::ostream& os) { export_histogram(0, 100.0, 1, os, Format::csv); }));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][1], "29");
}

TEST(ExportSpec, ValidateAndDispatch) {
    ExportSpec spec;
    spec.kind = ExportKind::surface;
    spec.n_sigma = 1;
    EXPECT_THROW(spec.validate(), zsym::domain_error);
    spec.kind = ExportKind::loops;
    spec.t_lo = 2010.0;
    spec.t_hi = 2000.0;
    EXPECT_THROW(spec.validate(), zsym::domain_error);
    spec.kind = ExportKind::histogram;
    spec.count = 0;
    spec.t_hi = 5.0;
    EXPECT_THROW(spec.validate(), zsym::domain_error);
    spec.kind = ExportKind::stepplot;
    spec.decimation = 0;
    EXPECT_THROW(spec.validate(), zsym::domain_error);

    ExportSpec ok;
    ok.kind = ExportKind::loops;
    ok.t_lo = 2000.0;
    ok.t_hi = 2001.0;
    ok.samples = 5;
    std::ostringstream os;
    EXPECT_EQ(run_export(ok, os), 5);
}

TEST(Determinism, RepeatedAndParallelRunsAreByteIdentical) {
    auto run = [](ExportKind kind, unsigned workers) {
        ExportSpec spec;
        spec.kind = kind;
        spec.workers = workers;
        spec.sigmas = {0.5, 0.52};
        spec.t = 3000.0;
        spec.t_lo = 120.0;
        spec.t_hi = 180.0;
        spec.samples = 37;
        spec.n_sigma = 5;
        spec.n_t = 9;
        spec.decimation = 7;
        spec.count = 20;
        spec.format = Format::json_lines;
        std::ostringstream os;
        run_export(spec, os);
        return os.str();
    };
    for (ExportKind k : {ExportKind::stepplot, ExportKind::limacon, ExportKind::surface, ExportKind::loops,
                         ExportKind::zeros, ExportKind::histogram}) {
        const std::string a = run(k, 1);
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, run(k, 1));
        EXPECT_EQ(a, run(k, 4));
    }
}
