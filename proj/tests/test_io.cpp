#include <gtest/gtest.h>

#include "dirtymac/io.hpp"
#include "helpers.hpp"

using namespace dirtymac;

TEST(Json, ParamsRoundTripIncludingInfinity) {
    auto p = testutil::make_params(10.0, 1.0, kInf, 100.0, 1.0, 1.0, 0.25);
    const json j = to_json(p);
    const ChannelParams q = params_from_json(j);
    EXPECT_EQ(q.p1, p.p1);
    EXPECT_EQ(q.p2, p.p2);
    EXPECT_EQ(q.q1, kInf);
    EXPECT_EQ(q.q2, p.q2);
    EXPECT_EQ(q.cb12, p.cb12);
    EXPECT_EQ(q.cb21, p.cb21);
    EXPECT_EQ(j.at("q1").get<std::string>(), "inf");
}

TEST(Json, ParseAcceptsInfLiteralAndRejectsJunk) {
    EXPECT_EQ(parse_num(json("inf"), "x"), kInf);
    EXPECT_EQ(parse_num(json(2.5), "x"), 2.5);
    EXPECT_THROW(parse_num(json("wat"), "x"), std::invalid_argument);
    EXPECT_THROW(parse_num(json(nullptr), "x"), std::invalid_argument);
}

TEST(Json, RegionSchema) {
    const auto p = testutil::make_params(3.0, 1.0, 0.0, 0.0);
    const json j = to_json(outer_no_coop(p));
    ASSERT_TRUE(j.contains("constraints"));
    ASSERT_TRUE(j.contains("vertices"));
    EXPECT_EQ(j["constraints"].size(), 3u);
    EXPECT_EQ(j["constraints"][1]["c"].get<std::string>(), "inf");
    for (const auto& v : j["vertices"]) ASSERT_EQ(v.size(), 2u);
}

TEST(Json, GapReportFields) {
    const json j = to_json(verify_theorems(testutil::canonical_point()));
    EXPECT_EQ(j["appendix_case"], "THETA_CAPACITY_LIMITED");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["coop"]["g1_required"], 3.0);
    EXPECT_EQ(j["coop"]["g2_required"], 1.5);
    EXPECT_EQ(j["no_coop"]["g1_required"], 1.0);
}

TEST(Csv, FormattingRoundTripsDoubles) {
    for (double v : {1.0 / 3.0, 1e-300, 12345.678901234567, 0.0}) {
        EXPECT_EQ(std::stod(fmt_double(v)), v);
    }
    EXPECT_EQ(fmt_double(kInf), "inf");
}

TEST(Csv, SweepIsDeterministic) {
    SweepOptions opt;
    opt.count = 50;
    opt.seed = 99;
    const auto a = sweep_csv(run_sweep(opt));
    const auto b = sweep_csv(run_sweep(opt));
    EXPECT_EQ(a, b);
    auto opt4 = opt;
    opt4.jobs = 4;
    EXPECT_EQ(sweep_csv(run_sweep(opt4)), a);
    EXPECT_NE(a.find(kCsvSchemaHeader), std::string::npos);
    EXPECT_NE(a.find("# violations: 0"), std::string::npos);
}

TEST(Csv, RegionPolylineClosesLoop) {
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, 1.0});
    r.constraints.push_back({0.0, 1.0, 0.5});
    const std::string csv = region_polyline_csv(r);
    // 4 vertices + repeated first + header lines
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    RateRegion pt;
    pt.constraints.push_back({1.0, 1.0, 0.0});
    const std::string single = region_polyline_csv(pt);
    EXPECT_EQ(std::count(single.begin(), single.end(), '\n'), 3);
}

TEST(Json, LinearSystemSchema) {
    const auto p = testutil::canonical_point();
    const json j = to_json(build_layer_system_no_coop(p));
    EXPECT_EQ(j["vars"].size(), 5u);
    EXPECT_EQ(j["rows"].size(), 6u);  // two bounds + two equality pairs
}
