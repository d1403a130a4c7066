#pragma once
// Shared fixtures: the seven configurations the acceptance run sweeps.

#include "sbo/pair_config.hpp"

#include <vector>

namespace testing {

inline sbo::HNum u_direction_i() {
    sbo::HNum u(sbo::Algebra::H);
    u[1] = 1;
    return u;
}

inline std::vector<sbo::PairConfig> acceptance_configs() {
    using sbo::Algebra;
    using sbo::FCase;
    return {
        sbo::derive(Algebra::C, 1, 0, FCase::Trivial),
        sbo::derive(Algebra::C, 2, 1, FCase::Trivial),
        sbo::derive(Algebra::H, 1, 0, FCase::Trivial),
        sbo::derive(Algebra::H, 1, 0, FCase::U1Direction, u_direction_i()),
        sbo::derive(Algebra::H, 2, 1, FCase::FullUnitary),
        sbo::derive(Algebra::H, 2, 1, FCase::Trivial),
        sbo::derive(Algebra::O, 1, 0, FCase::Trivial),
    };
}

}  // namespace testing
