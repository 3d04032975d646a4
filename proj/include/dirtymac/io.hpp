#pragma once

// JSON and CSV views of the library types. Infinite values travel as the
// literal string "inf" in JSON and as "inf" in CSV cells; doubles are
// printed with 17 significant digits so output is reproducible and
// round-trips exactly.

#include <cstdio>
#include <string>

#include "json.hpp"

#include "dirtymac/gap.hpp"
#include "dirtymac/lattice_sim.hpp"
#include "dirtymac/linear_system.hpp"
#include "dirtymac/params.hpp"
#include "dirtymac/regions.hpp"
#include "dirtymac/sweep.hpp"

namespace dirtymac {

using json = nlohmann::json;

inline constexpr const char* kCsvSchemaHeader = "# dirty-mac-lab v1";

inline std::string fmt_double(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// JSON value for a possibly-infinite double.
inline json jnum(double v) {
    if (v == kInf) return json("inf");
    if (v == -kInf) return json("-inf");
    return json(v);
}

inline double parse_num(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        try {
            return std::stod(s);
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument(std::string("expected a number for ") + what);
}

inline json to_json(const ChannelParams& p) {
    return json{{"p1", jnum(p.p1)},   {"p2", jnum(p.p2)},     {"q1", jnum(p.q1)},
                {"q2", jnum(p.q2)},   {"no", jnum(p.no)},     {"cb12", jnum(p.cb12)},
                {"cb21", jnum(p.cb21)}, {"swapped", p.swapped}};
}

inline ChannelParams params_from_json(const json& j, ChannelParams p = ChannelParams{}) {
    if (j.contains("p1")) p.p1 = parse_num(j.at("p1"), "p1");
    if (j.contains("p2")) p.p2 = parse_num(j.at("p2"), "p2");
    if (j.contains("q1")) p.q1 = parse_num(j.at("q1"), "q1");
    if (j.contains("q2")) p.q2 = parse_num(j.at("q2"), "q2");
    if (j.contains("no")) p.no = parse_num(j.at("no"), "no");
    if (j.contains("cb12")) p.cb12 = parse_num(j.at("cb12"), "cb12");
    if (j.contains("cb21")) p.cb21 = parse_num(j.at("cb21"), "cb21");
    return p;
}

inline json to_json(const SchemeParams& s) {
    return json{{"lattice_power", jnum(s.lattice_power)},
                {"coop_power", jnum(s.coop_power)},
                {"binning_power", jnum(s.binning_power)},
                {"mmse_lattice", jnum(s.mmse_lattice)},
                {"mmse_coop", jnum(s.mmse_coop)},
                {"distortion", jnum(s.distortion)},
                {"index_rate", jnum(s.index_rate)}};
}

inline json to_json(const RateRegion& r) {
    json cs = json::array();
    for (const auto& h : r.constraints)
        cs.push_back(json{{"a", jnum(h.a)}, {"b", jnum(h.b)}, {"c", jnum(h.c)}});
    json vs = json::array();
    for (const auto& v : vertices(r)) vs.push_back(json::array({v[0], v[1]}));
    return json{{"constraints", cs}, {"vertices", vs}};
}

inline json to_json(const LinearSystem& sys) {
    json rows = json::array();
    for (const auto& r : sys.rows) {
        json coeffs = json::array();
        for (double c : r.coeffs) coeffs.push_back(jnum(c));
        rows.push_back(json{{"coeffs", coeffs}, {"rhs", jnum(r.rhs)}});
    }
    return json{{"vars", sys.vars}, {"rows", rows}};
}

inline json to_json(const ModeGap& m) {
    return json{{"g1_required", m.g1_required},
                {"g2_required", m.g2_required},
                {"worst_violation", m.worst_violation},
                {"measured_sum_gap", jnum(m.measured_sum_gap)},
                {"measured_r2_gap", jnum(m.measured_r2_gap)},
                {"analytic_sum_gap_bound", m.analytic_sum_gap_bound},
                {"analytic_r2_gap_bound", m.analytic_r2_gap_bound},
                {"pass", m.pass}};
}

inline json to_json(const GapReport& g) {
    return json{{"params", to_json(g.params)},
                {"scheme", to_json(g.scheme)},
                {"appendix_case", to_string(g.appendix_case)},
                {"no_coop", to_json(g.no_coop)},
                {"coop", to_json(g.coop)},
                {"pass", g.pass}};
}

inline json to_json(const SimReport& r) {
    json j{{"n", r.n},
           {"measured_zeff_var", r.measured_zeff_var},
           {"predicted_zeff_var", r.predicted_zeff_var},
           {"ks_uniformity", r.ks_uniformity},
           {"ks_interference_invariance", r.ks_interference_invariance},
           {"max_identity_residual", r.max_identity_residual}};
    if (r.measured_x1_power) j["measured_x1_power"] = *r.measured_x1_power;
    if (r.measured_x2_power) j["measured_x2_power"] = *r.measured_x2_power;
    if (r.index_rate_residual) j["index_rate_residual"] = *r.index_rate_residual;
    if (r.max_pairwise_correlation)
        j["max_pairwise_correlation"] = *r.max_pairwise_correlation;
    if (r.mi_gaussian) j["mi_gaussian"] = *r.mi_gaussian;
    if (r.mi_alt) j["mi_alt"] = *r.mi_alt;
    return j;
}

// CSV sweep schema, one row per tuple.
inline std::string sweep_csv_header() {
    std::string h = kCsvSchemaHeader;
    h += "\nindex,p1,p2,q1,q2,no,cb12,cb21,swapped";
    h += ",nc_outer_sum1,nc_outer_sum2,nc_outer_r2,nc_inner_sum,nc_inner_r2";
    h += ",coop_outer_sum1,coop_outer_sum2,coop_outer_r2,coop_inner_sum,coop_inner_r2";
    h += ",lattice_power,coop_power,binning_power,mmse_lattice,mmse_coop,distortion,index_rate";
    h += ",appendix_case,nc_violation,coop_violation";
    h += ",nc_sum_gap,nc_r2_gap,coop_sum_gap,coop_r2_gap";
    h += ",nc_sum_gap_bound,nc_r2_gap_bound,coop_sum_gap_bound,coop_r2_gap_bound,pass\n";
    return h;
}

inline std::string sweep_csv_row(std::int64_t index, const GapReport& g) {
    const auto& p = g.params;
    const RateRegion onc = outer_no_coop(p), inc = inner_no_coop(p);
    const RateRegion oc = outer_coop(p), ic = inner_coop(p, g.scheme);
    std::string row = std::to_string(index);
    auto add = [&row](double v) {
        row += ',';
        row += fmt_double(v);
    };
    add(p.p1); add(p.p2); add(p.q1); add(p.q2); add(p.no); add(p.cb12); add(p.cb21);
    row += p.swapped ? ",1" : ",0";
    add(onc.constraints[0].c); add(onc.constraints[1].c); add(onc.constraints[2].c);
    add(inc.constraints[0].c); add(inc.constraints[1].c);
    add(oc.constraints[0].c); add(oc.constraints[1].c); add(oc.constraints[2].c);
    add(ic.constraints[0].c); add(ic.constraints[1].c);
    add(g.scheme.lattice_power); add(g.scheme.coop_power); add(g.scheme.binning_power);
    add(g.scheme.mmse_lattice); add(g.scheme.mmse_coop); add(g.scheme.distortion);
    add(g.scheme.index_rate);
    row += ',';
    row += to_string(g.appendix_case);
    add(g.no_coop.worst_violation); add(g.coop.worst_violation);
    add(g.no_coop.measured_sum_gap); add(g.no_coop.measured_r2_gap);
    add(g.coop.measured_sum_gap); add(g.coop.measured_r2_gap);
    add(g.no_coop.analytic_sum_gap_bound); add(g.no_coop.analytic_r2_gap_bound);
    add(g.coop.analytic_sum_gap_bound); add(g.coop.analytic_r2_gap_bound);
    row += g.pass ? ",1\n" : ",0\n";
    return row;
}

inline std::string sweep_csv(const std::vector<GapReport>& reports) {
    std::string out = sweep_csv_header();
    for (std::size_t i = 0; i < reports.size(); ++i)
        out += sweep_csv_row(static_cast<std::int64_t>(i), reports[i]);
    const SweepSummary s = summarize(reports);
    out += "# violations: " + std::to_string(s.violations) +
           " (max " + fmt_double(s.max_violation) + ")\n";
    return out;
}

// Closed vertex polyline of a region, one "r1,r2" row per vertex; the
// first vertex is repeated at the end when the region has area.
inline std::string region_polyline_csv(const RateRegion& r) {
    std::string out = kCsvSchemaHeader;
    out += "\nr1,r2\n";
    const auto vs = vertices(r);
    for (const auto& v : vs)
        out += fmt_double(v[0]) + "," + fmt_double(v[1]) + "\n";
    if (vs.size() > 1)
        out += fmt_double(vs[0][0]) + "," + fmt_double(vs[0][1]) + "\n";
    return out;
}

}  // namespace dirtymac
