#pragma once

// Channel parameters for the two-user dirty MAC with conferencing encoders,
// plus the derived quantities of the layered transmission scheme.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dirtymac {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Additive tolerance used for all rate comparisons (bits).
inline constexpr double kRateTol = 1e-9;

struct ChannelParams {
    double p1 = 0.0;    // transmit power, user 1 (linear)
    double p2 = 0.0;    // transmit power, user 2 (linear)
    double q1 = 0.0;    // interference-1 variance (linear, may be +inf)
    double q2 = 0.0;    // interference-2 variance (linear, may be +inf)
    double no = 1.0;    // receiver noise variance (linear, > 0)
    double cb12 = 0.0;  // conference link capacity Tx1 -> Tx2 (bits/use)
    double cb21 = 0.0;  // conference link capacity Tx2 -> Tx1 (bits/use)
    bool swapped = false;  // users were relabeled so that p1 >= p2

    double snr1() const { return p1 / no; }
    double snr2() const { return p2 / no; }
    double inr1() const { return q1 / no; }
    double inr2() const { return q2 / no; }

    bool all_finite() const {
        return std::isfinite(p1) && std::isfinite(p2) && std::isfinite(q1) &&
               std::isfinite(q2) && std::isfinite(no);
    }
};

inline void validate(const ChannelParams& p) {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("invalid channel parameters: " + what);
    };
    if (!(p.no > 0.0) || !std::isfinite(p.no)) bad("no must be finite and > 0");
    if (!(p.p1 >= 0.0) || !std::isfinite(p.p1)) bad("p1 must be finite and >= 0");
    if (!(p.p2 >= 0.0) || !std::isfinite(p.p2)) bad("p2 must be finite and >= 0");
    if (!(p.q1 >= 0.0) || std::isnan(p.q1)) bad("q1 must be >= 0 (inf allowed)");
    if (!(p.q2 >= 0.0) || std::isnan(p.q2)) bad("q2 must be >= 0 (inf allowed)");
    if (!(p.cb12 >= 0.0) || !std::isfinite(p.cb12)) bad("cb12 must be finite and >= 0");
    if (!(p.cb21 >= 0.0) || !std::isfinite(p.cb21)) bad("cb21 must be finite and >= 0");
}

// Relabels users so that user 1 is the stronger one (p1 >= p2). Ties keep
// the original order. The q's and the conference link directions follow the
// user labels.
inline ChannelParams normalized(ChannelParams raw) {
    validate(raw);
    if (raw.p1 < raw.p2) {
        std::swap(raw.p1, raw.p2);
        std::swap(raw.q1, raw.q2);
        std::swap(raw.cb12, raw.cb21);
        raw.swapped = true;
    } else {
        raw.swapped = false;
    }
    return raw;
}

inline void require_normalized(const ChannelParams& p) {
    if (p.p1 < p.p2)
        throw std::logic_error("params must be normalized (p1 >= p2)");
}

// Power split and receiver scalings of the three-layer scheme. All values
// are fully determined by the channel parameters.
struct SchemeParams {
    double lattice_power = 0.0;   // bottom layer, equals p2
    double coop_power = 0.0;      // middle layer carried over the conference link
    double binning_power = 0.0;   // top layer, p1 - coop_power - p2
    double mmse_lattice = 0.0;    // receiver scaling, bottom layer
    double mmse_coop = 0.0;       // receiver scaling, middle layer
    double distortion = 0.0;      // quantizer distortion of the conferenced signal
    double index_rate = 0.0;      // conference rate spent on the quantizer index
};

// Picks the middle-layer power and the conference rate split. The middle
// layer is only worth running when the conference link can carry at least
// half a bit; below that it is switched off entirely.
inline SchemeParams select_cooperation_power(const ChannelParams& p) {
    require_normalized(p);
    SchemeParams s;
    s.lattice_power = p.p2;
    const double base = p.no + 2.0 * p.p2;
    if (p.cb21 >= 0.5) {
        const double cap_limit = base * (std::exp2(2.0 * p.cb21) - 2.0);
        s.coop_power = std::min(cap_limit, std::min(p.q2, p.p1 - p.p2));
        // equals cb21 on the capacity-limited branch; min absorbs rounding
        s.index_rate = std::min(p.cb21, 0.5 * std::log2(2.0 + s.coop_power / base));
    } else {
        s.coop_power = 0.0;
        s.index_rate = 0.0;
    }
    // the min above keeps this nonnegative up to rounding
    s.binning_power = std::max(0.0, p.p1 - s.coop_power - p.p2);
    s.mmse_lattice = 2.0 * s.lattice_power / (2.0 * s.lattice_power + p.no);
    s.mmse_coop = s.coop_power / (s.coop_power + base);
    s.distortion = s.coop_power * base / (s.coop_power + base);
    return s;
}

}  // namespace dirtymac
