#pragma once

// Linear inequality systems over named nonnegative rate variables, the
// per-layer achievable-rate systems of the transmission scheme, and
// Fourier-Motzkin elimination down to the (R1, R2) plane.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirtymac/params.hpp"
#include "dirtymac/regions.hpp"

namespace dirtymac {

// coeffs . vars <= rhs. Every variable additionally satisfies var >= 0
// implicitly; those rows are never stored.
struct LinearRow {
    std::vector<double> coeffs;
    double rhs = 0.0;
};

struct LinearSystem {
    std::vector<std::string> vars;
    std::vector<LinearRow> rows;

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw std::invalid_argument("unknown variable: " + name);
    }

    void add_le(std::initializer_list<std::pair<const char*, double>> terms, double rhs) {
        LinearRow row;
        row.coeffs.assign(vars.size(), 0.0);
        for (const auto& [name, coef] : terms) row.coeffs[index_of(name)] = coef;
        row.rhs = rhs;
        rows.push_back(std::move(row));
    }

    // Equality stored as the pair of opposite inequalities.
    void add_eq(std::initializer_list<std::pair<const char*, double>> terms, double rhs) {
        add_le(terms, rhs);
        LinearRow neg = rows.back();
        for (double& c : neg.coeffs) c = -c;
        neg.rhs = -rhs;
        rows.push_back(std::move(neg));
    }
};

namespace detail {

constexpr double kSignEps = 1e-12;
constexpr double kRedundancyEps = 1e-9;

inline bool row_trivial(const LinearRow& r) {
    if (r.rhs == kInf) return true;
    for (double c : r.coeffs)
        if (std::abs(c) > kSignEps) return false;
    return r.rhs >= -kRedundancyEps;
}

// Row j is implied by row i when, after scaling both coefficient vectors
// to unit norm, the directions agree within tolerance and i's rhs is no
// larger.
inline void drop_redundant_rows(std::vector<LinearRow>& rows) {
    std::vector<LinearRow> kept;
    for (const auto& row : rows) {
        if (row_trivial(row)) continue;
        double n = 0.0;
        for (double c : row.coeffs) n += c * c;
        n = std::sqrt(n);
        bool implied = false;
        for (auto& k : kept) {
            double nk = 0.0;
            for (double c : k.coeffs) nk += c * c;
            nk = std::sqrt(nk);
            bool same_dir = true;
            for (std::size_t t = 0; t < row.coeffs.size(); ++t) {
                if (std::abs(row.coeffs[t] / n - k.coeffs[t] / nk) > kRedundancyEps) {
                    same_dir = false;
                    break;
                }
            }
            if (!same_dir) continue;
            if (k.rhs / nk > row.rhs / n + kRedundancyEps) k = row;  // tighter row wins
            implied = true;
            break;
        }
        if (!implied) kept.push_back(row);
    }
    rows = std::move(kept);
}

inline std::vector<LinearRow> eliminate_one(const std::vector<LinearRow>& rows,
                                            std::size_t col) {
    std::vector<const LinearRow*> pos, neg;
    std::vector<LinearRow> out;
    for (const auto& r : rows) {
        const double c = r.coeffs[col];
        if (c > kSignEps)
            pos.push_back(&r);
        else if (c < -kSignEps)
            neg.push_back(&r);
        else {
            out.push_back(r);
            out.back().coeffs[col] = 0.0;
        }
    }
    auto combine = [col](const LinearRow& up, const LinearRow& lo) {
        const double su = 1.0 / up.coeffs[col];
        const double sl = -1.0 / lo.coeffs[col];
        LinearRow r;
        r.coeffs.resize(up.coeffs.size());
        for (std::size_t t = 0; t < r.coeffs.size(); ++t)
            r.coeffs[t] = su * up.coeffs[t] + sl * lo.coeffs[t];
        r.coeffs[col] = 0.0;
        r.rhs = su * up.rhs + sl * lo.rhs;
        return r;
    };
    for (const auto* up : pos) {
        for (const auto* lo : neg) out.push_back(combine(*up, *lo));
        // pair with the implicit lower bound var >= 0
        LinearRow r = *up;
        const double s = 1.0 / r.coeffs[col];
        for (double& c : r.coeffs) c *= s;
        r.rhs *= s;
        r.coeffs[col] = 0.0;
        out.push_back(std::move(r));
    }
    drop_redundant_rows(out);
    return out;
}

}  // namespace detail

// Projects the system onto the kept variables by eliminating the others
// one at a time in lexicographic name order.
inline LinearSystem fme_eliminate(const LinearSystem& sys,
                                  const std::vector<std::string>& keep) {
    std::vector<std::string> drop;
    for (const auto& v : sys.vars) {
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
    }
    for (const auto& k : keep) sys.index_of(k);  // validates keep
    std::sort(drop.begin(), drop.end());

    std::vector<LinearRow> rows = sys.rows;
    detail::drop_redundant_rows(rows);
    for (const auto& name : drop)
        rows = detail::eliminate_one(rows, sys.index_of(name));

    LinearSystem out;
    out.vars = keep;
    for (const auto& r : rows) {
        LinearRow nr;
        nr.coeffs.resize(keep.size());
        for (std::size_t t = 0; t < keep.size(); ++t)
            nr.coeffs[t] = r.coeffs[sys.index_of(keep[t])];
        nr.rhs = r.rhs;
        out.rows.push_back(std::move(nr));
    }
    return out;
}

// Per-layer achievable rates without conferencing: the bottom (lattice)
// layer carries both users, the top (binning) layer carries user 1 only.
inline LinearSystem build_layer_system_no_coop(const ChannelParams& p) {
    require_normalized(p);
    const double s1 = p.snr1(), s2 = p.snr2(), i2 = p.inr2();
    LinearSystem sys;
    sys.vars = {"R1L", "R2L", "R1R", "R1", "R2"};
    sys.add_le({{"R1L", 1.0}, {"R2L", 1.0}}, 0.5 * log2_pos(0.5 + s2));
    sys.add_le({{"R1R", 1.0}}, gaussian_capacity((s1 - s2) / (1.0 + 2.0 * s2 + i2)));
    sys.add_eq({{"R1", 1.0}, {"R1L", -1.0}, {"R1R", -1.0}}, 0.0);
    sys.add_eq({{"R2", 1.0}, {"R2L", -1.0}}, 0.0);
    return sys;
}

// Per-layer achievable rates with conferencing: lattice, conference and
// binning layers, the last shared by both users through the relay split.
inline LinearSystem build_layer_system_coop(const ChannelParams& p,
                                            const SchemeParams& s) {
    require_normalized(p);
    const double base = p.no + 2.0 * p.p2;
    const double denom = p.no + s.coop_power + 2.0 * p.p2 + p.q2;
    LinearSystem sys;
    sys.vars = {"R1L", "R2L", "R1C", "R2C", "R1R", "R2R", "R1", "R2"};
    sys.add_le({{"R1L", 1.0}, {"R2L", 1.0}}, 0.5 * log2_pos(0.5 + p.snr2()));
    sys.add_le({{"R1C", 1.0}, {"R2C", 1.0}},
               clamp0(gaussian_capacity(s.coop_power / base) - 0.5));
    sys.add_le({{"R1R", 1.0}, {"R2R", 1.0}},
               (denom == kInf) ? 0.0 : gaussian_capacity(s.binning_power / denom));
    sys.add_le({{"R2R", 1.0}}, p.cb21 - s.index_rate);
    sys.add_eq({{"R1", 1.0}, {"R1L", -1.0}, {"R1C", -1.0}, {"R1R", -1.0}}, 0.0);
    sys.add_eq({{"R2", 1.0}, {"R2L", -1.0}, {"R2C", -1.0}, {"R2R", -1.0}}, 0.0);
    return sys;
}

// View of a two-variable system (vars must be exactly {R1, R2} in order)
// as a rate region.
inline RateRegion to_region(const LinearSystem& sys) {
    if (sys.vars.size() != 2)
        throw std::invalid_argument("to_region: system must have two variables");
    RateRegion r;
    for (const auto& row : sys.rows) {
        if (std::abs(row.coeffs[0]) <= detail::kSignEps &&
            std::abs(row.coeffs[1]) <= detail::kSignEps)
            continue;
        r.constraints.push_back({row.coeffs[0], row.coeffs[1], row.rhs});
    }
    return r;
}

}  // namespace dirtymac
