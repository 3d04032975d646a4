#include <gtest/gtest.h>

#include "dirtymac/params.hpp"
#include "helpers.hpp"

using namespace dirtymac;

TEST(Normalize, SwapsWhenUser2IsStronger) {
    ChannelParams raw;
    raw.p1 = 1.0;
    raw.p2 = 2.0;
    raw.q1 = 3.0;
    raw.q2 = 4.0;
    raw.no = 1.0;
    raw.cb12 = 0.25;
    raw.cb21 = 0.75;
    const ChannelParams p = normalized(raw);
    EXPECT_DOUBLE_EQ(p.p1, 2.0);
    EXPECT_DOUBLE_EQ(p.p2, 1.0);
    EXPECT_DOUBLE_EQ(p.q1, 4.0);
    EXPECT_DOUBLE_EQ(p.q2, 3.0);
    EXPECT_DOUBLE_EQ(p.cb12, 0.75);
    EXPECT_DOUBLE_EQ(p.cb21, 0.25);
    EXPECT_TRUE(p.swapped);
}

TEST(Normalize, IdentityWhenAlreadyOrdered) {
    const ChannelParams p = testutil::make_params(2.0, 1.0, 3.0, 4.0);
    EXPECT_DOUBLE_EQ(p.p1, 2.0);
    EXPECT_DOUBLE_EQ(p.p2, 1.0);
    EXPECT_FALSE(p.swapped);
}

TEST(Normalize, TieKeepsOrder) {
    const ChannelParams p = testutil::make_params(1.0, 1.0, 3.0, 4.0);
    EXPECT_DOUBLE_EQ(p.q1, 3.0);
    EXPECT_DOUBLE_EQ(p.q2, 4.0);
    EXPECT_FALSE(p.swapped);
}

TEST(Normalize, RejectsBadInputs) {
    ChannelParams p;
    p.no = 0.0;
    EXPECT_THROW(normalized(p), std::invalid_argument);
    p.no = kInf;
    EXPECT_THROW(normalized(p), std::invalid_argument);
    p.no = 1.0;
    p.p1 = -1.0;
    EXPECT_THROW(normalized(p), std::invalid_argument);
    p.p1 = kInf;
    EXPECT_THROW(normalized(p), std::invalid_argument);
    p.p1 = 1.0;
    p.q2 = -2.0;
    EXPECT_THROW(normalized(p), std::invalid_argument);
    p.q2 = kInf;  // infinite interference is allowed
    EXPECT_NO_THROW(normalized(p));
    p.cb21 = -0.1;
    EXPECT_THROW(normalized(p), std::invalid_argument);
}

TEST(CooperationPower, CapacityLimitedPoint) {
    const SchemeParams s = select_cooperation_power(testutil::canonical_point());
    EXPECT_NEAR(s.coop_power, 6.0, 1e-12);
    EXPECT_NEAR(s.index_rate, 1.0, 1e-12);
    EXPECT_NEAR(s.binning_power, 3.0, 1e-12);
    EXPECT_NEAR(s.lattice_power, 1.0, 1e-12);
    EXPECT_NEAR(s.mmse_coop, 6.0 / 9.0, 1e-12);
    EXPECT_NEAR(s.distortion, 2.0, 1e-12);
}

TEST(CooperationPower, SmallLinkDisablesLayer) {
    const auto p = testutil::make_params(10.0, 1.0, 100.0, 100.0, 1.0, 0.4);
    const SchemeParams s = select_cooperation_power(p);
    EXPECT_DOUBLE_EQ(s.coop_power, 0.0);
    EXPECT_DOUBLE_EQ(s.index_rate, 0.0);
    EXPECT_DOUBLE_EQ(s.binning_power, 9.0);
}

TEST(CooperationPower, PowerLimitedBranch) {
    const auto p = testutil::make_params(3.0, 1.0, 100.0, 100.0, 1.0, 2.0);
    const SchemeParams s = select_cooperation_power(p);
    EXPECT_NEAR(s.coop_power, 2.0, 1e-12);
    EXPECT_NEAR(s.binning_power, 0.0, 1e-12);
}

TEST(CooperationPower, InfiniteInterferenceUsesOtherLimits) {
    const auto p = testutil::make_params(10.0, 1.0, kInf, kInf, 1.0, 1.0);
    const SchemeParams s = select_cooperation_power(p);
    EXPECT_NEAR(s.coop_power, 6.0, 1e-12);
}

TEST(CooperationPower, MonotoneInLinkCapacity) {
    for (int t = 0; t < 50; ++t) {
        const auto base = testutil::random_tuple(101, t, 0.0);
        double prev = -1.0;
        for (double cb = 0.0; cb <= 8.0; cb += 0.125) {
            auto p = base;
            p.cb21 = cb;
            const SchemeParams s = select_cooperation_power(p);
            EXPECT_GE(s.coop_power, prev - 1e-12);
            prev = s.coop_power;
        }
    }
}

TEST(CooperationPower, InvariantsOnRandomTuples) {
    for (int t = 0; t < 500; ++t) {
        const auto p = testutil::random_tuple(202, t);
        const SchemeParams s = select_cooperation_power(p);
        EXPECT_LE(s.index_rate, p.cb21 + 1e-12);
        EXPECT_GE(s.binning_power, -1e-12);
        EXPECT_LE(s.coop_power, std::min(p.q2, p.p1 - p.p2) + 1e-12);
        EXPECT_GE(s.mmse_lattice, 0.0);
        EXPECT_LT(s.mmse_lattice, 1.0);
        EXPECT_GE(s.mmse_coop, 0.0);
        EXPECT_LT(s.mmse_coop, 1.0);
        const double base = p.no + 2.0 * p.p2;
        const double want = s.coop_power * base / (s.coop_power + base);
        EXPECT_NEAR(s.distortion, want, 1e-9 * std::max(1.0, want));
        if (s.coop_power > 0.0) {
            // quantizer bookkeeping: index rate matches the distortion
            EXPECT_NEAR(s.index_rate,
                        0.5 * std::log2(1.0 + s.coop_power / s.distortion), 1e-12);
        }
    }
}
