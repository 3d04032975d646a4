#pragma once

// Sample-level Monte Carlo of the layered modulo-lattice scheme on a scalar
// lattice: the receiver-side channel transformation, effective-noise
// statistics, dither uniformity, interference-power invariance, and the
// worst-case-noise property of the precoding rate.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dirtymac/params.hpp"
#include "dirtymac/rng.hpp"
#include "dirtymac/stats.hpp"

namespace dirtymac {

// Scaled integer lattice q*Z with half-open Voronoi cell [-q/2, q/2).
struct ScalarLattice {
    double cell = 0.0;           // fundamental cell width q
    double second_moment = 0.0;  // q^2 / 12
};

inline ScalarLattice lattice_for_power(double power) {
    if (std::isnan(power) || power < 0.0)
        throw std::invalid_argument("lattice_for_power: power must be >= 0");
    return {std::sqrt(12.0 * power), power};
}

inline double mod_lattice(double x, const ScalarLattice& lat) {
    if (!std::isfinite(x)) throw std::invalid_argument("mod_lattice: non-finite input");
    if (lat.cell == 0.0) return 0.0;
    return x - lat.cell * std::floor(x / lat.cell + 0.5);
}

// Distance between two points of the same cell seen on the wrap-around
// torus, so that values straddling the cell edge compare as equal.
inline double torus_distance(double a, double b, const ScalarLattice& lat) {
    const double d = std::abs(a - b);
    return lat.cell == 0.0 ? d : std::min(d, lat.cell - d);
}

struct SimReport {
    std::int64_t n = 0;
    double measured_zeff_var = 0.0;
    double predicted_zeff_var = 0.0;
    double ks_uniformity = 0.0;
    double ks_interference_invariance = 0.0;
    double max_identity_residual = 0.0;
    std::optional<double> measured_x1_power;
    std::optional<double> measured_x2_power;
    std::optional<double> index_rate_residual;      // conference-layer bookkeeping
    std::optional<double> max_pairwise_correlation; // binning-layer summands
    std::optional<double> mi_gaussian;
    std::optional<double> mi_alt;
};

namespace simtag {
// stream labels: (layer, role)
inline constexpr std::uint64_t lattice = 1, coop = 2, binning = 3, claim1 = 4;
inline constexpr std::uint64_t v1 = 1, v2 = 2, d1 = 3, d2 = 4, s1 = 5, s2 = 6,
                               z = 7, quant = 8, xl1 = 9, xl2 = 10;
}  // namespace simtag

namespace detail {

inline void require_sim_inputs(const ChannelParams& p, std::int64_t n) {
    require_normalized(p);
    if (n < 1) throw std::invalid_argument("simulation needs n >= 1");
    if (!p.all_finite())
        throw std::invalid_argument("simulation needs finite channel parameters");
}

}  // namespace detail

// Bottom layer: both users precode against their own interference with a
// common lattice. Verifies the per-sample equivalence of the receiver
// transform with the codeword-plus-effective-noise form, the effective
// noise variance, dither-induced uniformity of the transmitted signals,
// and invariance of the equivalent channel output under a 100x increase
// of both interference powers (all non-interference randomness shared).
inline SimReport run_lattice_layer(const ChannelParams& p, std::int64_t n,
                                   std::uint64_t seed) {
    detail::require_sim_inputs(p, n);
    const SchemeParams s = select_cooperation_power(p);
    const ScalarLattice lat = lattice_for_power(s.lattice_power);
    const double alpha = s.mmse_lattice;

    const SubStream sv1(seed, {simtag::lattice, simtag::v1});
    const SubStream sv2(seed, {simtag::lattice, simtag::v2});
    const SubStream sd1(seed, {simtag::lattice, simtag::d1});
    const SubStream sd2(seed, {simtag::lattice, simtag::d2});
    const SubStream ss1(seed, {simtag::lattice, simtag::s1});
    const SubStream ss2(seed, {simtag::lattice, simtag::s2});
    const SubStream sz(seed, {simtag::lattice, simtag::z});

    SimReport rep;
    rep.n = n;
    rep.predicted_zeff_var =
        alpha * alpha * p.no + (1.0 - alpha) * (1.0 - alpha) * 2.0 * s.lattice_power;

    MomentAccumulator zeff_acc, x1_acc, x2_acc;
    std::vector<double> x1s, x2s, y_base, y_scaled;
    x1s.reserve(static_cast<std::size_t>(n));
    x2s.reserve(static_cast<std::size_t>(n));
    y_base.reserve(static_cast<std::size_t>(n));
    y_scaled.reserve(static_cast<std::size_t>(n));

    const double g1 = std::sqrt(p.q1), g2 = std::sqrt(p.q2);
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::uint64_t>(t);
        const double v1 = sv1.uniform_cell(i, lat.cell);
        const double v2 = sv2.uniform_cell(i, lat.cell);
        const double d1 = sd1.uniform_cell(i, lat.cell);
        const double d2 = sd2.uniform_cell(i, lat.cell);
        const double n1 = ss1.gaussian(i);
        const double n2 = ss2.gaussian(i);
        const double z = sz.gaussian(i) * std::sqrt(p.no);

        auto equivalent_output = [&](double scale) {
            const double s1 = n1 * g1 * scale;
            const double s2 = n2 * g2 * scale;
            const double x1 = mod_lattice(v1 - alpha * s1 - d1, lat);
            const double x2 = mod_lattice(v2 - alpha * s2 - d2, lat);
            const double y = x1 + x2 + s1 + s2 + z;
            const double yl = mod_lattice(alpha * y + d1 + d2, lat);
            const double zeff = alpha * z - (1.0 - alpha) * (x1 + x2);
            const double direct = mod_lattice(v1 + v2 + zeff, lat);
            return std::array<double, 5>{x1, x2, yl, zeff, direct};
        };

        const auto base = equivalent_output(1.0);
        const auto scaled = equivalent_output(10.0);  // 100x interference power
        rep.max_identity_residual = std::max(
            rep.max_identity_residual, torus_distance(base[2], base[4], lat));
        zeff_acc.add(base[3]);
        x1_acc.add(base[0]);
        x2_acc.add(base[1]);
        x1s.push_back(base[0]);
        x2s.push_back(base[1]);
        y_base.push_back(base[2]);
        y_scaled.push_back(scaled[2]);
    }

    rep.measured_zeff_var = zeff_acc.variance();
    rep.measured_x1_power = x1_acc.mean_square();
    rep.measured_x2_power = x2_acc.mean_square();
    rep.ks_uniformity = std::max(ks_uniform_cell(std::move(x1s), lat.cell),
                                 ks_uniform_cell(std::move(x2s), lat.cell));
    rep.ks_interference_invariance =
        ks_two_sample(std::move(y_base), std::move(y_scaled));
    return rep;
}

// Middle layer: user 2's precoded signal is quantized and carried over the
// conference link, then relayed inside user 1's transmission. The lattice
// layer's signals plus the channel noise act as this layer's noise floor.
// Returns nothing when the layer is switched off.
inline std::optional<SimReport> run_coop_layer(const ChannelParams& p,
                                               const SchemeParams& s, std::int64_t n,
                                               std::uint64_t seed) {
    detail::require_sim_inputs(p, n);
    if (s.coop_power == 0.0) return std::nullopt;

    const ScalarLattice lat = lattice_for_power(s.coop_power);
    const ScalarLattice lat_l = lattice_for_power(s.lattice_power);
    const double alpha = s.mmse_coop;

    const SubStream sv1(seed, {simtag::coop, simtag::v1});
    const SubStream sv2(seed, {simtag::coop, simtag::v2});
    const SubStream sd1(seed, {simtag::coop, simtag::d1});
    const SubStream ss1(seed, {simtag::coop, simtag::s1});
    const SubStream ss2(seed, {simtag::coop, simtag::s2});
    const SubStream sz(seed, {simtag::coop, simtag::z});
    const SubStream sq(seed, {simtag::coop, simtag::quant});
    const SubStream sxl1(seed, {simtag::coop, simtag::xl1});
    const SubStream sxl2(seed, {simtag::coop, simtag::xl2});

    SimReport rep;
    rep.n = n;
    rep.predicted_zeff_var = s.distortion + alpha * alpha * (p.no + 2.0 * p.p2) +
                             (1.0 - alpha) * (1.0 - alpha) * s.coop_power;
    rep.index_rate_residual = std::abs(
        s.index_rate - 0.5 * std::log2(1.0 + s.coop_power / s.distortion));

    MomentAccumulator zeff_acc, x1_acc;
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::uint64_t>(t);
        const double v1 = sv1.uniform_cell(i, lat.cell);
        const double v2 = sv2.uniform_cell(i, lat.cell);
        const double d1 = sd1.uniform_cell(i, lat.cell);
        const double s1 = ss1.gaussian(i) * std::sqrt(p.q1);
        const double s2 = ss2.gaussian(i) * std::sqrt(p.q2);
        const double z = sz.gaussian(i) * std::sqrt(p.no);
        const double qn = sq.gaussian(i) * std::sqrt(s.distortion);
        const double xl1 = sxl1.uniform_cell(i, lat_l.cell);
        const double xl2 = sxl2.uniform_cell(i, lat_l.cell);

        const double x2c = mod_lattice(v2 - alpha * s2, lat);
        const double x2c_hat = x2c + qn;  // conferenced quantization point
        const double x1c = mod_lattice(v1 + x2c_hat - alpha * s1 - d1, lat);
        const double zc = xl1 + xl2 + z;
        const double y = x1c + s1 + s2 + zc;
        const double yc = mod_lattice(alpha * y + d1, lat);
        const double zeff = qn + alpha * zc - (1.0 - alpha) * x1c;
        const double direct = mod_lattice(v1 + v2 + zeff, lat);

        rep.max_identity_residual =
            std::max(rep.max_identity_residual, torus_distance(yc, direct, lat));
        zeff_acc.add(zeff);
        x1_acc.add(x1c);
    }
    rep.measured_zeff_var = zeff_acc.variance();
    rep.measured_x1_power = x1_acc.mean_square();
    return rep;
}

// Top layer: measures the aggregate noise this layer's decoder sees when
// every lower-layer signal is generated through the full coupled encoding
// chain, and checks that the summands are pairwise uncorrelated (the
// dithers decouple them despite the chain coupling).
inline SimReport run_binning_layer(const ChannelParams& p, const SchemeParams& s,
                                   std::int64_t n, std::uint64_t seed) {
    detail::require_sim_inputs(p, n);
    const ScalarLattice lat_l = lattice_for_power(s.lattice_power);
    const ScalarLattice lat_c = lattice_for_power(s.coop_power);
    const double al = s.mmse_lattice;
    const double ac = s.mmse_coop;

    const SubStream svl1(seed, {simtag::binning, simtag::lattice, simtag::v1});
    const SubStream svl2(seed, {simtag::binning, simtag::lattice, simtag::v2});
    const SubStream sdl1(seed, {simtag::binning, simtag::lattice, simtag::d1});
    const SubStream sdl2(seed, {simtag::binning, simtag::lattice, simtag::d2});
    const SubStream svc1(seed, {simtag::binning, simtag::coop, simtag::v1});
    const SubStream svc2(seed, {simtag::binning, simtag::coop, simtag::v2});
    const SubStream sdc1(seed, {simtag::binning, simtag::coop, simtag::d1});
    const SubStream sq(seed, {simtag::binning, simtag::quant});
    const SubStream ss1(seed, {simtag::binning, simtag::s1});
    const SubStream ss2(seed, {simtag::binning, simtag::s2});
    const SubStream sz(seed, {simtag::binning, simtag::z});

    SimReport rep;
    rep.n = n;
    rep.predicted_zeff_var = p.no + s.coop_power + 2.0 * p.p2 + p.q2;

    MomentAccumulator z_acc, x1_acc, x2_acc;
    enum { kX1C, kX1L, kX2L, kS2, kZ, kParts };
    CorrelationAccumulator corr[kParts][kParts];
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::uint64_t>(t);
        const double s1 = ss1.gaussian(i) * std::sqrt(p.q1);
        const double s2 = ss2.gaussian(i) * std::sqrt(p.q2);
        const double z = sz.gaussian(i) * std::sqrt(p.no);

        double x1c = 0.0;
        if (s.coop_power > 0.0) {
            const double x2c = mod_lattice(svc2.uniform_cell(i, lat_c.cell) - ac * s2, lat_c);
            const double x2c_hat = x2c + sq.gaussian(i) * std::sqrt(s.distortion);
            x1c = mod_lattice(svc1.uniform_cell(i, lat_c.cell) + x2c_hat - ac * s1 -
                                  sdc1.uniform_cell(i, lat_c.cell),
                              lat_c);
        }
        const double x1l = mod_lattice(svl1.uniform_cell(i, lat_l.cell) -
                                           al * (s1 + x1c) - sdl1.uniform_cell(i, lat_l.cell),
                                       lat_l);
        const double x2l = mod_lattice(svl2.uniform_cell(i, lat_l.cell) - al * s2 -
                                           sdl2.uniform_cell(i, lat_l.cell),
                                       lat_l);

        const double parts[kParts] = {x1c, x1l, x2l, s2, z};
        double zr = 0.0;
        for (double v : parts) zr += v;
        z_acc.add(zr);
        x1_acc.add(x1c + x1l);
        x2_acc.add(x2l);
        for (int a = 0; a < kParts; ++a)
            for (int b = a + 1; b < kParts; ++b) corr[a][b].add(parts[a], parts[b]);
    }
    rep.measured_zeff_var = z_acc.variance();
    rep.measured_x1_power = x1_acc.mean_square();
    rep.measured_x2_power = x2_acc.mean_square();
    double worst = 0.0;
    for (int a = 0; a < kParts; ++a)
        for (int b = a + 1; b < kParts; ++b) {
            if (a == kX1C && s.coop_power == 0.0) continue;
            worst = std::max(worst, std::abs(corr[a][b].correlation()));
        }
    rep.max_pairwise_correlation = worst;
    return rep;
}

enum class NoiseFamily { gaussian, uniform, laplace };

struct Claim1Result {
    double mi_estimate = 0.0;  // plug-in estimate of I(U;Y) - I(U;S), bits
    double rate_floor = 0.0;   // (1/2)log2(1 + P/Nz), bits
};

// Scalar dirty-paper check that the precoding rate survives non-Gaussian
// channel noise: the binned estimate of I(U;Y) - I(U;S) with U = X + aS,
// a = P/(P+Nz), must not drop below the Gaussian-noise value.
inline Claim1Result claim1_mi_check(double P, double Q, double Nz,
                                    NoiseFamily family, std::int64_t n,
                                    std::uint64_t seed) {
    if (!(P > 0.0) || !(Q > 0.0) || !(Nz > 0.0))
        throw std::invalid_argument("claim1_mi_check: P, Q, Nz must be > 0");
    if (n < 10000)
        throw std::invalid_argument("claim1_mi_check: estimator needs n >= 10^4");

    const SubStream sx(seed, {simtag::claim1, 1});
    const SubStream ss(seed, {simtag::claim1, 2});
    const SubStream sz(seed, {simtag::claim1, 3});
    const double alpha = P / (P + Nz);
    const double amp = std::sqrt(3.0 * Nz);

    std::vector<double> u(static_cast<std::size_t>(n)), y(u.size()), s(u.size());
    for (std::int64_t t = 0; t < n; ++t) {
        const auto i = static_cast<std::uint64_t>(t);
        const double x = sx.gaussian(i) * std::sqrt(P);
        const double sv = ss.gaussian(i) * std::sqrt(Q);
        double z = 0.0;
        switch (family) {
            case NoiseFamily::gaussian: z = sz.gaussian(i) * std::sqrt(Nz); break;
            case NoiseFamily::uniform: z = (sz.uniform01(i) * 2.0 - 1.0) * amp; break;
            case NoiseFamily::laplace: z = sz.laplace(i, Nz); break;
        }
        const auto idx = static_cast<std::size_t>(t);
        u[idx] = x + alpha * sv;
        s[idx] = sv;
        y[idx] = x + sv + z;
    }
    Claim1Result res;
    res.mi_estimate =
        mutual_information_binned(u, y) - mutual_information_binned(u, s);
    res.rate_floor = 0.5 * std::log2(1.0 + P / Nz);
    return res;
}

}  // namespace dirtymac
