#pragma once

// Outer-vs-inner gap verification: componentwise shrink-containment at the
// outer region's vertices, the case split of the scheme's power selection,
// and the per-case analytic gap constants used as oracles.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dirtymac/params.hpp"
#include "dirtymac/regions.hpp"

namespace dirtymac {

enum class AppendixCase {
    cb_small,          // conference link below half a bit, middle layer off
    capacity_limited,  // middle-layer power set by the conference capacity
    q2_limited,        // middle-layer power set by the interference variance
    power_limited,     // middle-layer power set by the transmit power surplus
};

inline const char* to_string(AppendixCase c) {
    switch (c) {
        case AppendixCase::cb_small: return "CB_SMALL";
        case AppendixCase::capacity_limited: return "THETA_CAPACITY_LIMITED";
        case AppendixCase::q2_limited: return "THETA_Q2_LIMITED";
        case AppendixCase::power_limited: return "THETA_POWER_LIMITED";
    }
    return "UNKNOWN";
}

struct ShrinkResult {
    bool pass = false;
    double worst_violation = 0.0;  // largest membership deficit, 0 if none
};

// Shrinks every vertex of the outer region by (g1, g2), clamped at zero
// componentwise, and tests membership in the inner region.
inline ShrinkResult shrink_check(const RateRegion& outer, const RateRegion& inner,
                                 double g1, double g2, double tol) {
    ShrinkResult res;
    res.pass = true;
    for (const auto& v : vertices(outer)) {
        const Point pt = {clamp0(v[0] - g1), clamp0(v[1] - g2)};
        const double deficit = membership_deficit(inner, pt);
        res.worst_violation = std::max(res.worst_violation, clamp0(deficit));
        if (deficit > tol) res.pass = false;
    }
    return res;
}

// Which branch of the power selection is active. Ties prefer the
// capacity-limited branch, then the q2-limited one.
inline AppendixCase classify_case(const ChannelParams& p, const SchemeParams& s) {
    (void)s;
    if (p.cb21 < 0.5) return AppendixCase::cb_small;
    const double cap_limit = (p.no + 2.0 * p.p2) * (std::exp2(2.0 * p.cb21) - 2.0);
    const double power_limit = p.p1 - p.p2;
    if (cap_limit <= p.q2 && cap_limit <= power_limit)
        return AppendixCase::capacity_limited;
    if (p.q2 <= power_limit) return AppendixCase::q2_limited;
    return AppendixCase::power_limited;
}

struct GapBounds {
    double sum_gap = 0.0;  // bits, bound on outer-minus-inner sum-rate RHS
    double r2_gap = 0.0;   // bits, bound on outer-minus-inner R2 cap
};

inline GapBounds analytic_gap_bounds_no_coop() { return {1.0, 0.5}; }

inline GapBounds analytic_gap_bounds(AppendixCase c) {
    switch (c) {
        case AppendixCase::cb_small: return {2.0, 0.5};
        case AppendixCase::capacity_limited: return {3.0, 1.5};
        case AppendixCase::q2_limited: return {3.0, 1.5};
        case AppendixCase::power_limited: return {1.5, 1.5};
    }
    throw std::invalid_argument("analytic_gap_bounds: unknown case");
}

// Gap verdict for one mode (with or without conferencing).
struct ModeGap {
    double g1_required = 0.0;
    double g2_required = 0.0;
    double worst_violation = 0.0;
    double measured_sum_gap = 0.0;
    double measured_r2_gap = 0.0;
    double analytic_sum_gap_bound = 0.0;
    double analytic_r2_gap_bound = 0.0;
    bool pass = false;
};

struct GapReport {
    ChannelParams params;
    SchemeParams scheme;
    AppendixCase appendix_case = AppendixCase::cb_small;
    ModeGap no_coop;
    ModeGap coop;
    bool pass = false;
};

namespace detail {

inline ModeGap check_mode(const RateRegion& outer, const RateRegion& inner,
                          double g1, double g2, GapBounds bounds, double tol) {
    ModeGap m;
    m.g1_required = g1;
    m.g2_required = g2;
    m.analytic_sum_gap_bound = bounds.sum_gap;
    m.analytic_r2_gap_bound = bounds.r2_gap;
    const ShrinkResult sr = shrink_check(outer, inner, g1, g2, tol);
    m.worst_violation = sr.worst_violation;
    m.measured_sum_gap = min_rhs(outer, 1.0, 1.0) - min_rhs(inner, 1.0, 1.0);
    m.measured_r2_gap = min_rhs(outer, 0.0, 1.0) - min_rhs(inner, 0.0, 1.0);
    m.pass = sr.pass && m.measured_sum_gap <= bounds.sum_gap + tol &&
             m.measured_r2_gap <= bounds.r2_gap + tol;
    return m;
}

}  // namespace detail

// Runs the shrink-containment checks for both modes at the constant-gap
// pairs (1, 0.5) and (3, 1.5), and cross-checks the measured per-constraint
// gaps against the per-case analytic constants.
inline GapReport verify_theorems(const ChannelParams& p) {
    constexpr double tol = kRateTol;
    GapReport rep;
    rep.params = p;
    rep.scheme = select_cooperation_power(p);
    rep.appendix_case = classify_case(p, rep.scheme);
    rep.no_coop = detail::check_mode(outer_no_coop(p), inner_no_coop(p), 1.0, 0.5,
                                     analytic_gap_bounds_no_coop(), tol);
    rep.coop = detail::check_mode(outer_coop(p), inner_coop(p, rep.scheme), 3.0, 1.5,
                                  analytic_gap_bounds(rep.appendix_case), tol);
    rep.pass = rep.no_coop.pass && rep.coop.pass;
    return rep;
}

}  // namespace dirtymac
