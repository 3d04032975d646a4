#pragma once

#include "dirtymac/params.hpp"
#include "dirtymac/sweep.hpp"

namespace testutil {

inline dirtymac::ChannelParams make_params(double p1, double p2, double q1, double q2,
                                           double no = 1.0, double cb21 = 0.0,
                                           double cb12 = 0.0) {
    dirtymac::ChannelParams p;
    p.p1 = p1;
    p.p2 = p2;
    p.q1 = q1;
    p.q2 = q2;
    p.no = no;
    p.cb12 = cb12;
    p.cb21 = cb21;
    return dirtymac::normalized(p);
}

// The worked point used throughout: coop_power = 6, index_rate = 1.
inline dirtymac::ChannelParams canonical_point() {
    return make_params(10.0, 1.0, 100.0, 100.0, 1.0, 1.0);
}

inline dirtymac::ChannelParams random_tuple(std::uint64_t seed, std::int64_t i,
                                            double cb21_fixed = -1.0) {
    dirtymac::SweepOptions opt;
    opt.seed = seed;
    opt.cb21_fixed = cb21_fixed;
    return dirtymac::sweep_tuple(opt, i);
}

}  // namespace testutil
