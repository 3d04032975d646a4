#include <gtest/gtest.h>

#include "dirtymac/gap.hpp"
#include "helpers.hpp"

using namespace dirtymac;

namespace {

RateRegion triangle(double sum) {
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, sum});
    return r;
}

}  // namespace

TEST(ShrinkCheck, IdenticalRegionsPassWithZeroGap) {
    const auto r = triangle(1.0);
    const auto res = shrink_check(r, r, 0.0, 0.0, 1e-9);
    EXPECT_TRUE(res.pass);
    EXPECT_DOUBLE_EQ(res.worst_violation, 0.0);
}

TEST(ShrinkCheck, VertexOnBoundaryCounts) {
    // (2,0) shrinks onto the inner boundary; (0,2) clamps in R1 and only
    // moves by g2, so the sum constraint is missed by 0.5 there.
    const auto res = shrink_check(triangle(2.0), triangle(1.0), 1.0, 0.5, 1e-9);
    EXPECT_FALSE(res.pass);
    EXPECT_NEAR(res.worst_violation, 0.5, 1e-12);
    EXPECT_TRUE(contains(triangle(1.0), {2.0 - 1.0, 0.0}, 1e-9));
}

TEST(ShrinkCheck, ViolationIsLargestDeficit) {
    const auto res = shrink_check(triangle(3.0), triangle(1.0), 1.0, 0.5, 1e-9);
    EXPECT_FALSE(res.pass);
    // vertex (3,0) misses by 1.0, the clamped vertex (0,3) by 1.5
    EXPECT_NEAR(res.worst_violation, 1.5, 1e-12);
    EXPECT_NEAR(membership_deficit(triangle(1.0), {2.0, 0.0}), 1.0, 1e-12);
}

TEST(ClassifyCase, BranchSelection) {
    auto scheme_of = [](const ChannelParams& p) { return select_cooperation_power(p); };
    const auto small = testutil::make_params(10.0, 1.0, 100.0, 100.0, 1.0, 0.4);
    EXPECT_EQ(classify_case(small, scheme_of(small)), AppendixCase::cb_small);

    const auto cap = testutil::canonical_point();
    EXPECT_EQ(classify_case(cap, scheme_of(cap)), AppendixCase::capacity_limited);

    const auto pw = testutil::make_params(3.0, 1.0, 100.0, 100.0, 1.0, 2.0);
    EXPECT_EQ(classify_case(pw, scheme_of(pw)), AppendixCase::power_limited);

    const auto q2 = testutil::make_params(100.0, 1.0, 100.0, 2.0, 1.0, 2.0);
    EXPECT_EQ(classify_case(q2, scheme_of(q2)), AppendixCase::q2_limited);
}

TEST(ClassifyCase, TiesPreferEarlierBranch) {
    // capacity limit equals q2: (1+2)(2^1-2)=0 at cb21=0.5 ties with q2=0
    const auto a = testutil::make_params(10.0, 1.0, 100.0, 0.0, 1.0, 0.5);
    EXPECT_EQ(classify_case(a, select_cooperation_power(a)),
              AppendixCase::capacity_limited);
    // q2 equals the power surplus, both below the capacity limit
    const auto b = testutil::make_params(3.0, 1.0, 100.0, 2.0, 1.0, 3.0);
    EXPECT_EQ(classify_case(b, select_cooperation_power(b)), AppendixCase::q2_limited);
}

TEST(AnalyticBounds, PerCaseConstants) {
    EXPECT_EQ(analytic_gap_bounds_no_coop().sum_gap, 1.0);
    EXPECT_EQ(analytic_gap_bounds_no_coop().r2_gap, 0.5);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::cb_small).sum_gap, 2.0);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::cb_small).r2_gap, 0.5);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::capacity_limited).sum_gap, 3.0);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::capacity_limited).r2_gap, 1.5);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::q2_limited).sum_gap, 3.0);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::q2_limited).r2_gap, 1.5);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::power_limited).sum_gap, 1.5);
    EXPECT_EQ(analytic_gap_bounds(AppendixCase::power_limited).r2_gap, 1.5);
}

TEST(VerifyTheorems, CanonicalPointPasses) {
    const auto rep = verify_theorems(testutil::canonical_point());
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.no_coop.pass);
    EXPECT_TRUE(rep.coop.pass);
    EXPECT_EQ(rep.appendix_case, AppendixCase::capacity_limited);
    EXPECT_LE(rep.no_coop.worst_violation, 1e-9);
    EXPECT_LE(rep.coop.worst_violation, 1e-9);
}

TEST(VerifyTheorems, DegenerateZeroPointPasses) {
    const auto rep = verify_theorems(testutil::make_params(0.0, 0.0, 0.0, 0.0));
    EXPECT_TRUE(rep.pass);
}

TEST(VerifyTheorems, RandomTuplesPass) {
    for (int t = 0; t < 500; ++t) {
        const auto rep = verify_theorems(testutil::random_tuple(111, t));
        EXPECT_TRUE(rep.pass) << "tuple " << t;
        EXPECT_LE(rep.no_coop.measured_sum_gap, rep.no_coop.analytic_sum_gap_bound + 1e-9);
        EXPECT_LE(rep.no_coop.measured_r2_gap, rep.no_coop.analytic_r2_gap_bound + 1e-9);
        EXPECT_LE(rep.coop.measured_sum_gap, rep.coop.analytic_sum_gap_bound + 1e-9);
        EXPECT_LE(rep.coop.measured_r2_gap, rep.coop.analytic_r2_gap_bound + 1e-9);
    }
}

// Direct per-constraint comparisons behind the no-coop constants.
TEST(VerifyTheorems, PerConstraintGapFormulas) {
    for (int t = 0; t < 500; ++t) {
        const auto p = testutil::random_tuple(222, t, 0.0);
        const auto outer = outer_no_coop(p);
        const auto inner = inner_no_coop(p);
        EXPECT_LE(outer.constraints[2].c - inner.constraints[1].c, 0.5 + 1e-12);
        if (p.inr2() <= 1.0 + 2.0 * p.snr2())
            EXPECT_LE(outer.constraints[0].c - inner.constraints[0].c, 1.0 + 1e-12);
        else
            EXPECT_LE(outer.constraints[1].c - inner.constraints[0].c, 1.0 + 1e-12);
    }
}
