#pragma once

// Rate regions of the dirty MAC as intersections of half-planes over
// (R1, R2), with R1 >= 0 and R2 >= 0 implicit. Builders for the four
// inner/outer bound regions, vertex enumeration and membership tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dirtymac/params.hpp"

namespace dirtymac {

using Point = std::array<double, 2>;

// Gaussian capacity (1/2)log2(1+x). Maps +inf to +inf.
inline double gaussian_capacity(double x) {
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("gaussian_capacity: argument must be >= 0");
    if (x == kInf) return kInf;
    return 0.5 * std::log2(1.0 + x);
}

// log2 clamped at zero; arguments <= 1 give 0.
inline double log2_pos(double x) {
    if (x <= 1.0) return 0.0;
    return std::log2(x);
}

inline double clamp0(double x) { return x > 0.0 ? x : 0.0; }

// a*R1 + b*R2 <= c. An infinite c marks an inactive constraint.
struct HalfPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct RateRegion {
    std::vector<HalfPlane> constraints;
};

inline bool contains(const RateRegion& r, const Point& pt, double tol) {
    if (pt[0] < -tol || pt[1] < -tol) return false;
    for (const auto& h : r.constraints) {
        if (h.c == kInf) continue;
        if (h.a * pt[0] + h.b * pt[1] > h.c + tol) return false;
    }
    return true;
}

// Signed membership deficit: max over constraints of lhs - rhs (negative
// strictly inside), including the nonnegativity constraints.
inline double membership_deficit(const RateRegion& r, const Point& pt) {
    double worst = std::max(-pt[0], -pt[1]);
    for (const auto& h : r.constraints) {
        if (h.c == kInf) continue;
        worst = std::max(worst, h.a * pt[0] + h.b * pt[1] - h.c);
    }
    return worst;
}

namespace detail {

inline bool region_is_unbounded(const std::vector<HalfPlane>& cs) {
    // The region is unbounded iff the recession cone
    //   {d >= 0 : a*d1 + b*d2 <= 0 for all finite constraints}
    // contains a nonzero direction. Any nonzero cone contains one of the
    // quadrant edges or a direction orthogonal to some constraint normal.
    std::vector<Point> cand = {{1.0, 0.0}, {0.0, 1.0}};
    for (const auto& h : cs) {
        const double n = std::hypot(h.a, h.b);
        if (n == 0.0) continue;
        cand.push_back({h.b / n, -h.a / n});
        cand.push_back({-h.b / n, h.a / n});
    }
    constexpr double eps = 1e-12;
    for (const auto& d : cand) {
        if (d[0] < -eps || d[1] < -eps) continue;
        if (std::abs(d[0]) <= eps && std::abs(d[1]) <= eps) continue;
        bool recedes = true;
        for (const auto& h : cs) {
            if (h.a * d[0] + h.b * d[1] > eps) {
                recedes = false;
                break;
            }
        }
        if (recedes) return true;
    }
    return false;
}

}  // namespace detail

// All extreme points of the region, counterclockwise, starting at the
// lexicographically smallest vertex. Duplicates within 1e-9 are merged.
inline std::vector<Point> vertices(const RateRegion& r) {
    constexpr double tol = 1e-9;
    std::vector<HalfPlane> cs;
    for (const auto& h : r.constraints) {
        if (h.c == kInf) continue;
        if (h.a == 0.0 && h.b == 0.0) continue;
        cs.push_back(h);
    }
    if (detail::region_is_unbounded(cs))
        throw std::runtime_error("vertices: region is unbounded");
    cs.push_back({-1.0, 0.0, 0.0});
    cs.push_back({0.0, -1.0, 0.0});

    std::vector<Point> pts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const double det = cs[i].a * cs[j].b - cs[j].a * cs[i].b;
            if (std::abs(det) < 1e-12) continue;
            const Point p = {(cs[i].c * cs[j].b - cs[j].c * cs[i].b) / det + 0.0,
                             (cs[i].a * cs[j].c - cs[j].a * cs[i].c) / det + 0.0};
            if (p[0] < -tol || p[1] < -tol) continue;
            bool feasible = true;
            for (const auto& h : cs) {
                if (h.a * p[0] + h.b * p[1] > h.c + tol) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) pts.push_back(p);
        }
    }

    // sort before clustering so the representatives do not depend on the
    // constraint enumeration order
    std::sort(pts.begin(), pts.end());
    std::vector<Point> uniq;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : uniq) {
            if (std::abs(p[0] - q[0]) <= tol && std::abs(p[1] - q[1]) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() <= 1) return uniq;

    double cx = 0.0, cy = 0.0;
    for (const auto& p : uniq) {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<double>(uniq.size());
    cy /= static_cast<double>(uniq.size());
    std::sort(uniq.begin(), uniq.end(), [&](const Point& u, const Point& v) {
        return std::atan2(u[1] - cy, u[0] - cx) < std::atan2(v[1] - cy, v[0] - cx);
    });
    std::size_t start = 0;
    for (std::size_t i = 1; i < uniq.size(); ++i) {
        if (uniq[i][0] < uniq[start][0] - tol ||
            (std::abs(uniq[i][0] - uniq[start][0]) <= tol && uniq[i][1] < uniq[start][1]))
            start = i;
    }
    std::rotate(uniq.begin(), uniq.begin() + static_cast<std::ptrdiff_t>(start), uniq.end());
    return uniq;
}

// Outer bound region, no conferencing.
inline RateRegion outer_no_coop(const ChannelParams& p) {
    require_normalized(p);
    const double s1 = p.snr1(), s2 = p.snr2(), i2 = p.inr2();
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, gaussian_capacity(s1 + s2)});
    const double c2 = (i2 == 0.0)
                          ? kInf
                          : gaussian_capacity((1.0 + s1 + s2) / i2) + gaussian_capacity(s2);
    r.constraints.push_back({1.0, 1.0, c2});
    r.constraints.push_back({0.0, 1.0, gaussian_capacity(s2)});
    return r;
}

// Achievable region, no conferencing.
inline RateRegion inner_no_coop(const ChannelParams& p) {
    require_normalized(p);
    const double s1 = p.snr1(), s2 = p.snr2(), i2 = p.inr2();
    const double lattice = 0.5 * log2_pos(0.5 + s2);
    const double binning = gaussian_capacity((s1 - s2) / (1.0 + 2.0 * s2 + i2));
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, lattice + binning});
    r.constraints.push_back({0.0, 1.0, lattice});
    return r;
}

// Outer bound region with conferencing.
inline RateRegion outer_coop(const ChannelParams& p) {
    require_normalized(p);
    const double s1 = p.snr1(), s2 = p.snr2(), i2 = p.inr2();
    const double beam = s1 + s2 + 2.0 * std::sqrt(s1 * s2);
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, gaussian_capacity(beam)});
    const double c2 = (i2 == 0.0) ? kInf
                                  : gaussian_capacity((1.0 + beam) / i2) +
                                        gaussian_capacity(s2) + p.cb21;
    r.constraints.push_back({1.0, 1.0, c2});
    r.constraints.push_back({0.0, 1.0, gaussian_capacity(s2) + p.cb21});
    return r;
}

// Achievable region with conferencing, for the given scheme split.
inline RateRegion inner_coop(const ChannelParams& p, const SchemeParams& s) {
    require_normalized(p);
    const double base = p.no + 2.0 * p.p2;
    const double lattice = 0.5 * log2_pos(0.5 + p.snr2());
    const double coop = clamp0(gaussian_capacity(s.coop_power / base) - 0.5);
    const double denom = p.no + s.coop_power + 2.0 * p.p2 + p.q2;
    const double binning =
        (denom == kInf) ? 0.0 : gaussian_capacity(s.binning_power / denom);
    RateRegion r;
    r.constraints.push_back({1.0, 1.0, lattice + coop + binning});
    r.constraints.push_back({0.0, 1.0, lattice + coop + (p.cb21 - s.index_rate)});
    return r;
}

// Smallest RHS among constraints matching the (a, b) signature, +inf if none.
inline double min_rhs(const RateRegion& r, double a, double b) {
    double best = kInf;
    for (const auto& h : r.constraints) {
        if (std::abs(h.a - a) <= 1e-12 && std::abs(h.b - b) <= 1e-12)
            best = std::min(best, h.c);
    }
    return best;
}

}  // namespace dirtymac
