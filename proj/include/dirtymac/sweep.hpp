#pragma once

// Parameter sweeps for the constant-gap verification: reproducible sampling
// of channel tuples and a jobs-bounded parallel driver whose output order
// and content do not depend on the schedule.

#include <cstdint>
#include <thread>
#include <vector>

#include "dirtymac/gap.hpp"
#include "dirtymac/params.hpp"
#include "dirtymac/rng.hpp"

namespace dirtymac {

struct SweepOptions {
    std::int64_t count = 10000;
    std::uint64_t seed = 1;
    double snr_min = 1e-3;
    double snr_max = 1e6;
    double inr_min = 1e-3;
    double inr_max = 1e6;
    // cb21 >= 0 fixes the conference capacity for every tuple; a negative
    // value samples it uniformly over [0, cb21_max] with the atoms 0 and
    // 0.5 mixed in, since the scheme switches branches there.
    double cb21_fixed = -1.0;
    double cb21_max = 8.0;
    int jobs = 1;
};

namespace detail {
inline constexpr std::uint64_t kSweepTag = 0x5753ull;  // stream label
}

// The i-th tuple of the sweep. Powers are assigned so that the stronger
// user is already user 1 and the sampled conference capacity keeps its
// direction under normalization.
inline ChannelParams sweep_tuple(const SweepOptions& opt, std::int64_t i) {
    const SubStream st(opt.seed, {detail::kSweepTag});
    const auto u = [&](std::uint64_t slot) {
        return st.uniform01(static_cast<std::uint64_t>(i) * 8 + slot);
    };
    auto log_uniform = [](double u01, double lo, double hi) {
        return std::exp2(std::log2(lo) + u01 * (std::log2(hi) - std::log2(lo)));
    };
    const double a = log_uniform(u(0), opt.snr_min, opt.snr_max);
    const double b = log_uniform(u(1), opt.snr_min, opt.snr_max);
    ChannelParams p;
    p.no = 1.0;
    p.p1 = std::max(a, b);
    p.p2 = std::min(a, b);
    p.q1 = log_uniform(u(2), opt.inr_min, opt.inr_max);
    p.q2 = log_uniform(u(3), opt.inr_min, opt.inr_max);
    p.cb12 = 0.0;
    if (opt.cb21_fixed >= 0.0) {
        p.cb21 = opt.cb21_fixed;
    } else {
        switch (i % 10) {
            case 8: p.cb21 = 0.0; break;
            case 9: p.cb21 = 0.5; break;
            default: p.cb21 = u(4) * opt.cb21_max;
        }
    }
    return normalized(p);
}

struct SweepSummary {
    std::int64_t count = 0;
    std::int64_t violations = 0;
    double max_violation = 0.0;
    bool pass = true;
};

inline SweepSummary summarize(const std::vector<GapReport>& reports) {
    SweepSummary s;
    s.count = static_cast<std::int64_t>(reports.size());
    for (const auto& r : reports) {
        if (!r.pass) ++s.violations;
        s.max_violation = std::max(
            s.max_violation, std::max(r.no_coop.worst_violation, r.coop.worst_violation));
    }
    s.pass = s.violations == 0;
    return s;
}

// Evaluates every tuple; results are indexed by tuple number, so any jobs
// count yields identical output.
inline std::vector<GapReport> run_sweep(const SweepOptions& opt) {
    std::vector<GapReport> out(static_cast<std::size_t>(opt.count));
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (std::int64_t i = 0; i < opt.count; ++i)
            out[static_cast<std::size_t>(i)] = verify_theorems(sweep_tuple(opt, i));
        return out;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::int64_t i = w; i < opt.count; i += jobs)
                out[static_cast<std::size_t>(i)] = verify_theorems(sweep_tuple(opt, i));
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

}  // namespace dirtymac
