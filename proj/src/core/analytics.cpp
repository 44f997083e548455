#include "core/analytics.hpp"

#include <cmath>

namespace npa {

namespace {

void require_gain(double g, const char* who) {
    if (!(g >= 1.0) || !std::isfinite(g))
        throw std::invalid_argument(std::string(who) + ": g must be finite and >= 1");
}

void require_nu(double nu, const char* who) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::invalid_argument(std::string(who) + ": nu must lie in (0, 1]");
}

}  // namespace

AnalyticPrediction predict_coherent(Complex alpha, double g) {
    require_gain(g, "predict_coherent");
    AnalyticPrediction p;
    p.output_amplitude = alpha / g;
    p.success_probability = std::exp(-(g * g - 1.0) * std::norm(alpha) / (g * g)) / (g * g);
    p.attenuation = 1.0 / g;
    return p;
}

double fock_factor(int n, double g) {
    require_gain(g, "fock_factor");
    if (n < 0) throw std::invalid_argument("fock_factor: n must be >= 0");
    return std::pow(g, -(n + 1.0));
}

AnalyticPrediction predict_single_rail(double g) {
    require_gain(g, "predict_single_rail");
    AnalyticPrediction p;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    p.output_coefficients = {inv_sqrt2 / g, inv_sqrt2 / (g * g)};
    p.success_probability = (g * g + 1.0) / (2.0 * g * g * g * g);
    p.attenuation = 1.0 / g;
    return p;
}

double bs_coherent_success(Complex alpha, double nu) {
    require_nu(nu, "bs_coherent_success");
    return std::exp(-(1.0 - nu * nu) * std::norm(alpha));
}

double cat_coherence_factor(Complex alpha, double nu) {
    require_nu(nu, "cat_coherence_factor");
    return std::exp(-2.0 * (1.0 - nu * nu) * std::norm(alpha));
}

}  // namespace npa
