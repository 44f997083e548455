#include "core/states.hpp"

#include <algorithm>
#include <cmath>

namespace npa {

namespace {

// Unnormalized coherent amplitudes on the truncated space plus the exact
// tail mass beyond the cutoff.
std::pair<Vector, double> coherent_amps(Complex alpha, int dim) {
    Vector amps(dim);
    amps[0] = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 0; n + 1 < dim; ++n) amps[n + 1] = amps[n] * alpha / std::sqrt(double(n + 1));
    const double tail = std::max(0.0, 1.0 - amps.squaredNorm());
    return {std::move(amps), tail};
}

}  // namespace

int coherent_truncation_dim(double mean_photons, double tail_tol) {
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons))
        throw std::invalid_argument("coherent_truncation_dim: |alpha|^2 must be finite");
    if (mean_photons == 0.0) return 1;
    double term = std::exp(-mean_photons);
    double cdf = term;
    int n = 0;
    while (1.0 - cdf > tail_tol && n < 100000) {
        ++n;
        term *= mean_photons / n;
        cdf += term;
    }
    return n + 1;
}

int guarded_npa_dim(int n_max, double g) {
    if (n_max < 0) throw std::invalid_argument("guarded_npa_dim: n_max must be >= 0");
    if (!(g >= 1.0)) throw std::invalid_argument("guarded_npa_dim: g must be >= 1");
    const double sinh_sq = g * g - 1.0;
    const int padded = n_max + static_cast<int>(std::ceil(10.0 * sinh_sq));
    return std::max({2 * padded, n_max + 2, 4});
}

SingleModeState coherent(Complex alpha, Truncation trunc) {
    auto [amps, tail] = coherent_amps(alpha, trunc.dim);
    if (tail > tol::truncation_tail)
        throw TruncationFailure("coherent: dim " + std::to_string(trunc.dim) +
                                " leaves Poisson tail mass " + std::to_string(tail));
    amps /= amps.norm();
    return SingleModeState(trunc, std::move(amps), tail);
}

SingleModeState coherent_auto(Complex alpha) {
    return coherent(alpha, Truncation(coherent_truncation_dim(std::norm(alpha))));
}

SingleModeState fock_state(int n, Truncation trunc) {
    if (n < 0 || n >= trunc.dim)
        throw std::out_of_range("fock_state: n must lie in [0, dim)");
    Vector amps = Vector::Zero(trunc.dim);
    amps[n] = 1.0;
    return SingleModeState(trunc, std::move(amps));
}

SingleModeState single_rail_qubit(Complex c0, Complex c1, Truncation trunc) {
    if (trunc.dim < 2) throw std::invalid_argument("single_rail_qubit: dim must be >= 2");
    if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > tol::norm_construction)
        throw std::invalid_argument("single_rail_qubit: |c0|^2 + |c1|^2 must equal 1");
    Vector amps = Vector::Zero(trunc.dim);
    amps[0] = c0;
    amps[1] = c1;
    return SingleModeState(trunc, std::move(amps));
}

SingleModeState cat_state(Complex alpha, int sign, Truncation trunc) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("cat_state: sign must be +1 or -1");
    if (alpha == Complex(0.0) && sign == -1)
        throw std::invalid_argument("cat_state: cat(0, -1) is the zero vector");

    auto [plus, tail_p] = coherent_amps(alpha, trunc.dim);
    auto [minus, tail_m] = coherent_amps(-alpha, trunc.dim);
    const double tail = std::max(tail_p, tail_m);
    if (tail > tol::truncation_tail)
        throw TruncationFailure("cat_state: dim " + std::to_string(trunc.dim) +
                                " leaves Poisson tail mass " + std::to_string(tail));

    Vector amps = plus + double(sign) * minus;
    amps /= amps.norm();
    return SingleModeState(trunc, std::move(amps), tail);
}

}  // namespace npa
