#pragma once

#include "core/fock.hpp"

namespace npa {

// Smallest dim whose Poisson(|alpha|^2) tail mass is <= tail_tol.
int coherent_truncation_dim(double mean_photons, double tail_tol = tol::truncation_tail);

// Working truncation for states that feed the parametric attenuator:
// pair creation pushes amplitude upward by ~sinh^2(r) photons per mode,
// so the support bound n_max is padded by 10 sinh^2(r) and doubled.
int guarded_npa_dim(int n_max, double g);

// amps[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized after
// truncation; the discarded tail mass is recorded on the state and must
// not exceed the truncation tolerance.
SingleModeState coherent(Complex alpha, Truncation trunc);
SingleModeState coherent_auto(Complex alpha);

SingleModeState fock_state(int n, Truncation trunc);

// c0|0> + c1|1>; coefficients must be normalized.
SingleModeState single_rail_qubit(Complex c0, Complex c1, Truncation trunc);

// N (|alpha> + sign |-alpha>) with N = [2(1 + sign e^{-2|alpha|^2})]^{-1/2}.
// sign must be +1 or -1; cat(0, -1) is rejected (zero vector).
SingleModeState cat_state(Complex alpha, int sign, Truncation trunc);

}  // namespace npa
