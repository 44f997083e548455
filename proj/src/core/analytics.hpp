#pragma once

#include "core/fock.hpp"

#include <vector>

namespace npa {

// Closed-form expectation for a heralded attenuation run.
struct AnalyticPrediction {
    // Coherent scenarios: the output coherent amplitude alpha/g.
    Complex output_amplitude{0.0, 0.0};
    // Fock-superposition scenarios: unnormalized output coefficients.
    std::vector<Complex> output_coefficients;
    double success_probability = 1.0;
    double attenuation = 1.0;  // nu = 1/g
};

// |alpha> -> |alpha/g| with P_s = (1/g^2) e^{-(g^2-1)|alpha|^2/g^2}.
AnalyticPrediction predict_coherent(Complex alpha, double g);

// Heralded amplitude factor for |n>: 1/g^{n+1}.
double fock_factor(int n, double g);

// (1/sqrt(2))(|0> + |1>) -> (1/(g sqrt(2)))(|0> + (1/g)|1>),
// P_s = (g^2+1)/(2 g^4).
AnalyticPrediction predict_single_rail(double g);

// Herald success of the beam-splitter baseline on |alpha>:
// e^{-(1-nu^2)|alpha|^2}.
double bs_coherent_success(Complex alpha, double nu);

// Magnitude of the environment-overlap factor that suppresses cat-state
// off-diagonals under unheralded loss: e^{-2(1-nu^2)|alpha|^2}.
double cat_coherence_factor(Complex alpha, double nu);

}  // namespace npa
