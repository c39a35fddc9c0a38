#include <gtest/gtest.h>

#include <zsym/steps.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace zsym;

TEST(ReducedPhase, Examples) {
    EXPECT_LT(oracle::angle_distance(reduced_phase(two_pi, std::exp(1.0)), 0.0), 1e-12);
    EXPECT_EQ(reduced_phase(0.0, 5.0), 0.0);
    EXPECT_NEAR(reduced_phase(1e6, 2.0), 1.2561574923115442117, 1e-9);
    EXPECT_NEAR(reduced_phase(1e8, 123457.0), 5.3350207165401114405, 1e-9);
}

TEST(ReducedPhase, QuadOracleSweep) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tdist(1.0, 1e8);
    std::uniform_int_distribution<std::int64_t> ndist(2, 20'000'000);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double t = tdist(rng);
        const auto n = static_cast<double>(ndist(rng));
        const double got = reduced_phase(t, n);
        EXPECT_GE(got, 0.0);
        EXPECT_LT(got, two_pi);
        worst = std::max(worst, oracle::angle_distance(got, oracle::reduced_phase(t, n)));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(StepTerm, Examples) {
    EXPECT_EQ(step_term(1, {0.5, 1234.5}), complex(1.0, 0.0));
    EXPECT_EQ(step_term(4, {2.0, 0.0}), complex(0.0625, 0.0));
    const complex z = step_term(2, {0.5, 1000.0});
    EXPECT_NEAR(std::abs(z), std::sqrt(0.5), 1e-15);
    EXPECT_LT(oracle::angle_distance(std::arg(z), oracle::reduced_phase(1000.0, 2.0)), 1e-12);
    EXPECT_NEAR(z.real(), -0.29219916208307623845, 1e-14);
    EXPECT_NEAR(z.imag(), -0.64390965956254153827, 1e-14);
}

TEST(StepTerm, LengthRelativeAccuracy) {
    for (std::int64_t n : {2, 17, 1000, 123457, 99999989}) {
        for (double sigma : {0.1, 0.5, 0.9, 2.0}) {
            const double expect = static_cast<double>(powl(static_cast<long double>(n), -sigma));
            EXPECT_LT(std::fabs(std::abs(step_term(n, {sigma, 777.0})) / expect - 1.0), 1e-14);
        }
    }
}

TEST(StepTerm, ReflectionIsExact) {
    for (std::int64_t n : {1, 2, 3, 50, 99991}) {
        for (double t : {0.5, 14.1, 1e5, 9.9e7}) {
            const Argument s{0.37, t};
            EXPECT_EQ(step_term(n, conj(s)), std::conj(step_term(n, s)));
        }
    }
}

TEST(StepTerm, ModulusStrictlyDecreasing) {
    const Argument s{0.05, 321.0};
    double prev = std::abs(step_term(1, s));
    for (std::int64_t n = 2; n <= 5000; ++n) {
        const double cur = std::abs(step_term(n, s));
        ASSERT_LT(cur, prev) << n;
        prev = cur;
    }
}

TEST(PartialSum, Examples) {
    EXPECT_EQ(partial_sum(1, 1, {0.5, 77.0}), complex(1.0, 0.0));
    const complex basel = partial_sum(1, 1'000'000, {2.0, 0.0});
    EXPECT_NEAR(basel.real(), 1.6449330668487264363, 1e-13);
    EXPECT_NEAR(basel.real(), M_PI * M_PI / 6.0 - 1e-6, 1e-6);
    const complex z = partial_sum(1, 100, {0.5, 50.0});
    EXPECT_NEAR(z.real(), -0.26913704346907716479, 1e-13);
    EXPECT_NEAR(z.imag(), 0.25393247994156914667, 1e-13);
}

TEST(PartialSum, LongDoubleOracle) {
    for (double t : {50.0, 1000.0, 123456.7}) {
        const auto ref = oracle::partial_sum_ld(1, 100, 0.5, t);
        const complex got = partial_sum(1, 100, {0.5, t});
        EXPECT_LT(std::abs(got - complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))), 1e-12);
    }
}

TEST(PartialSum, Telescoping) {
    const Argument s{0.5, 31415.9};
    for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{2, 10}, {50, 9000}, {7000, 20000}, {1, 40000}}) {
        const complex whole = partial_sum(1, b, s);
        const complex split = partial_sum(1, a - 1, s) + partial_sum(a, b, s);
        EXPECT_LT(std::abs(whole - split), 1e-12) << a << ".." << b;
    }
}

TEST(PartialSum, EmptyAndGuards) {
    EXPECT_EQ(partial_sum(5, 4, {0.5, 10.0}), complex(0.0, 0.0));
    EXPECT_THROW(partial_sum(0, 4, {0.5, 10.0}), zsym::domain_error);
    EXPECT_THROW(partial_sum(1, max_sum_span + 2, {0.5, 10.0}), zsym::range_error);
}

TEST(WalkSteps, FinalCumulativeMatchesPartialSum) {
    const Argument s{0.5, 2000.0};
    StepRecord last;
    std::int64_t count = 0;
    walk_steps(1, 636, s, [&](const StepRecord& r) {
        ++count;
        last = r;
        EXPECT_GE(r.angle, 0.0);
        EXPECT_LT(r.angle, two_pi);
    });
    EXPECT_EQ(count, 636);
    EXPECT_EQ(last.cumulative, partial_sum(1, 636, s));
}

TEST(AngleDiffs, Examples) {
    const AngleDiffs a = angle_diffs(1, M_PI / std::log(2.0));
    EXPECT_NEAR(a.delta1_raw, -M_PI, 1e-14);

    const AngleDiffs b = angle_diffs(1000, two_pi * 1e6);
    EXPECT_LT(oracle::angle_distance(b.delta2_mod, two_pi), 2.0 * two_pi / 1000.0);

    const double t = two_pi * 1e6;
    const AngleDiffs c = angle_diffs(1'000'000, t);
    const double exact = -static_cast<double>(static_cast<__float128>(t) * log1pq(1e-6Q));
    EXPECT_NEAR(c.delta1_raw, exact, 1e-14);
    EXPECT_NEAR(c.delta1_raw, -two_pi * (1.0 - 0.5e-6), 1e-10);
    EXPECT_NEAR(c.delta1_mod, std::fmod(exact, two_pi), 1e-10);
    EXPECT_LE(c.delta1_mod, 0.0);
    EXPECT_GT(c.delta1_mod, -two_pi);
}

TEST(AngleDiffs, RawIncreasingSecondPositive) {
    const double t = 5000.0;
    double prev = angle_diffs(1, t).delta1_raw;
    for (std::int64_t n = 2; n < 4000; ++n) {
        const AngleDiffs d = angle_diffs(n, t);
        ASSERT_GT(d.delta1_raw, prev);
        ASSERT_LT(d.delta1_raw, 0.0);
        ASSERT_GE(d.delta2_mod, 0.0);
        ASSERT_LT(d.delta2_mod, two_pi);
        prev = d.delta1_raw;
    }
    EXPECT_THROW(angle_diffs(0, t), zsym::domain_error);
}
