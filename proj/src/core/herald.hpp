#pragma once

#include "core/fock.hpp"
#include "core/operators.hpp"

namespace npa {

// Result of projecting the idler mode onto a definite photon number.
// The conditional state is deliberately left unnormalized; its squared
// norm is the success probability. The normalized companion is absent
// when the probability is numerically zero.
struct HeraldOutcome {
    SingleModeState conditional;
    double probability;
    std::optional<SingleModeState> normalized;
};

HeraldOutcome herald_idler(const TwoModeState& state, int k);

// P(k) for k = 0..dim_idler-1; sums to 1 for a normalized state.
Eigen::VectorXd herald_distribution(const TwoModeState& state);

// Seed the signal with `input` and the idler with vacuum, evolve under the
// two-mode squeezer of gain g, then herald k idler photons (default 0).
// work_dim = 0 picks the guard-band truncation for the input's support.
HeraldOutcome npa_attenuate(const SingleModeState& input, double g, int work_dim = 0, int k = 0);

// Beam-splitter baseline: amplitude transmittance nu, herald k photons in
// the reflected mode (default 0).
HeraldOutcome bs_attenuate(const SingleModeState& input, double nu, int work_dim = 0, int k = 0);

}  // namespace npa
