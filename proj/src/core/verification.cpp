#include "core/verification.hpp"

#include "core/analytics.hpp"
#include "core/experiments.hpp"
#include "core/herald.hpp"
#include "core/states.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

namespace npa {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

constexpr double kSpotCoherentProbability = 0.1180916381852537;   // (1/4) e^{-3/4}
constexpr double kSpotQubitProbability = 0.15625;                 // 5/32
constexpr double kSpotFockAmplitude = 0.125;                      // 2^{-3}
constexpr double kSpotCatCoherence = 0.22313016014842982;         // e^{-3/2}

CriterionResult coherent_grid() {
    double max_fid_deficit = 0.0, max_prob_rel = 0.0, spot = -1.0;
    for (const double a : {0.5, 1.0, 2.0}) {
        for (const double g : {1.2, 2.0, 3.0}) {
            const ExperimentRecord rec = run_coherent(Complex(a, 0.0), g);
            max_fid_deficit = std::max(max_fid_deficit, 1.0 - rec.fidelity);
            max_prob_rel = std::max(max_prob_rel,
                                    std::abs(rec.numeric_probability - rec.analytic_probability) /
                                        rec.analytic_probability);
            if (a == 1.0 && g == 2.0) spot = rec.numeric_probability;
        }
    }
    const double spot_rel = std::abs(spot - kSpotCoherentProbability) / kSpotCoherentProbability;
    const bool pass = max_fid_deficit <= scenario_tol::fidelity_deficit &&
                      max_prob_rel <= scenario_tol::probability_relative && spot_rel <= 1e-6;
    return {1, "coherent attenuation: output state and success probability", pass,
            fmt("max fidelity deficit %.2e (tol 1e-08), max probability rel err %.2e (tol 1e-06), "
                "spot P(alpha=1,g=2)=%.9f",
                max_fid_deficit, max_prob_rel, spot)};
}

CriterionResult fock_grid() {
    double max_resid = 0.0, spot = -1.0;
    for (int n = 0; n <= 5; ++n) {
        for (const double g : {1.5, 2.0, 3.0}) {
            const ExperimentRecord rec = run_fock(n, g);
            for (const auto& r : rec.residuals)
                if (r.name == "amplitude_residual") max_resid = std::max(max_resid, r.value);
            if (n == 2 && g == 2.0)
                for (const auto& m : rec.metrics)
                    if (m.first == "amplitude_numeric_re") spot = m.second;
        }
    }
    const bool pass = max_resid <= scenario_tol::fock_amplitude &&
                      std::abs(spot - kSpotFockAmplitude) <= scenario_tol::fock_amplitude;
    return {2, "fock states: heralded amplitude factor", pass,
            fmt("max amplitude residual %.2e (tol 1e-09), spot amp(n=2,g=2)=%.12f", max_resid,
                spot)};
}

CriterionResult qubit_checks() {
    double max_prob_resid = 0.0, max_ratio_resid = 0.0, spot = -1.0;
    for (const double g : {1.5, 2.0, 3.0}) {
        const ExperimentRecord rec = run_qubit(g);
        for (const auto& r : rec.residuals) {
            if (r.name == "probability_residual")
                max_prob_resid = std::max(max_prob_resid, r.value);
            if (r.name == "amplitude_ratio_residual")
                max_ratio_resid = std::max(max_ratio_resid, r.value);
        }
        if (g == 2.0) spot = rec.numeric_probability;
    }
    const bool pass = max_prob_resid <= scenario_tol::qubit_probability &&
                      max_ratio_resid <= scenario_tol::qubit_ratio &&
                      std::abs(spot - kSpotQubitProbability) <= scenario_tol::qubit_probability;
    return {3, "single-rail qubit: output ratio and success probability", pass,
            fmt("max P residual %.2e, max ratio residual %.2e (tol 1e-09), spot P(g=2)=%.7f",
                max_prob_resid, max_ratio_resid, spot)};
}

CriterionResult operator_identity() {
    std::string detail;
    bool pass = true;
    for (const double g : {1.2, 2.0, 3.0}) {
        const ExperimentRecord rec = run_operator_equivalence(g, 60, 0.4);
        double guarded = 0.0, full = 0.0, defect = 0.0;
        for (const auto& m : rec.metrics) {
            if (m.first == "column_diff_guarded") guarded = m.second;
            if (m.first == "column_diff_full") full = m.second;
            if (m.first == "unitarity_defect") defect = m.second;
        }
        pass = pass && rec.pass;
        if (!detail.empty()) detail += "; ";
        detail += fmt("g=%.1f: guarded %.2e, full %.2e, defect %.2e", g, guarded, full, defect);
    }
    detail += " (tol: guarded 1e-06, defect 1e-10, dims 60x60, guard total<=24)";
    return {4, "squeezer identity: direct exponential vs factored form", pass, detail};
}

CriterionResult identity_limit() {
    double worst_fid_deficit = 0.0, worst_prob_err = 0.0;
    const Truncation t20(20);
    const std::vector<SingleModeState> inputs = {
        coherent(1.0, t20), fock_state(3, t20),
        single_rail_qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), t20),
        cat_state(1.0, +1, t20)};
    for (const auto& in : inputs) {
        const HeraldOutcome out = npa_attenuate(in, 1.0);
        const SingleModeState ref = resized(in, out.conditional.trunc);
        worst_fid_deficit = std::max(worst_fid_deficit, 1.0 - fidelity(*out.normalized, ref));
        worst_prob_err = std::max(worst_prob_err, std::abs(out.probability - 1.0));
    }
    const bool pass = worst_fid_deficit <= 1e-12 && worst_prob_err <= 1e-12;
    return {5, "identity limit g = 1", pass,
            fmt("max fidelity deficit %.2e, max |P-1| %.2e (tol 1e-12)", worst_fid_deficit,
                worst_prob_err)};
}

CriterionResult conditional_equivalence() {
    std::mt19937_64 rng(20250809ull);
    std::normal_distribution<double> normal;
    const Truncation t16(16);

    double worst_fid_deficit = 0.0, worst_prob_rel = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Vector amps(16);
        for (int i = 0; i < 16; ++i) amps[i] = Complex(normal(rng), normal(rng));
        amps /= amps.norm();
        const SingleModeState psi(t16, amps);
        for (const double g : {1.5, 2.0}) {
            const double nu = 1.0 / g;
            const HeraldOutcome via_npa = npa_attenuate(psi, g);
            const HeraldOutcome via_bs = bs_attenuate(psi, nu);
            const SingleModeState bs_out =
                resized(*via_bs.normalized, via_npa.normalized->trunc);
            worst_fid_deficit =
                std::max(worst_fid_deficit, 1.0 - fidelity(*via_npa.normalized, bs_out));
            worst_prob_rel = std::max(
                worst_prob_rel, std::abs(via_npa.probability - nu * nu * via_bs.probability) /
                                    via_npa.probability);
        }
    }
    const bool pass = worst_fid_deficit <= 1e-8 && worst_prob_rel <= 1e-6;
    return {6, "beam-splitter vs parametric attenuator conditional equivalence", pass,
            fmt("50 random states, dim 16, g in {1.5, 2}: max fidelity deficit %.2e (tol 1e-08), "
                "max |P_npa - nu^2 P_bs|/P_npa %.2e (tol 1e-06)",
                worst_fid_deficit, worst_prob_rel)};
}

CriterionResult cat_contrast() {
    const ExperimentRecord rec = run_cat(Complex(1.0, 0.0), 2.0);
    double purity_heralded = 0.0, coherence = -1.0;
    for (const auto& m : rec.metrics) {
        if (m.first == "heralded_purity") purity_heralded = m.second;
        if (m.first == "coherence_numeric") coherence = m.second;
    }
    const double coherence_err = std::abs(coherence - kSpotCatCoherence);
    const bool pass = (1.0 - purity_heralded) <= scenario_tol::cat_purity_deficit &&
                      (1.0 - rec.fidelity) <= scenario_tol::cat_fidelity_deficit &&
                      coherence_err <= scenario_tol::cat_coherence;
    return {7, "cat state: heralded coherence vs unheralded decoherence", pass,
            fmt("heralded purity deficit %.2e (tol 1e-10), fidelity deficit %.2e (tol 1e-06), "
                "|coherence - 0.223130| = %.2e (tol 1e-06)",
                1.0 - purity_heralded, 1.0 - rec.fidelity, coherence_err)};
}

CriterionResult series_consistency() {
    double worst = 0.0;
    for (const double a : {0.5, 1.0, 2.0}) {
        for (const double g : {1.2, 2.0, 3.0}) {
            const double mu = a * a;
            double term = std::exp(-mu);
            double sum = 0.0;
            for (int n = 0; n < 400; ++n) {
                sum += term * fock_factor(n, g) * fock_factor(n, g);
                term *= mu / (n + 1);
                if (term < 1e-25) break;
            }
            worst = std::max(
                worst, std::abs(sum - predict_coherent(a, g).success_probability));
        }
    }
    const bool pass = worst <= 1e-12;
    return {8, "series consistency: Poisson-weighted amplitude factors", pass,
            fmt("max |sum - closed form| %.2e (tol 1e-12)", worst)};
}

CriterionResult truncation_convergence() {
    double worst_growth = -1.0;
    const auto compare = [&](const ExperimentRecord& base, const ExperimentRecord& refined) {
        worst_growth = std::max(worst_growth, refined.max_residual - base.max_residual);
    };
    for (const double a : {0.5, 1.0, 2.0})
        for (const double g : {1.2, 2.0, 3.0}) {
            const ExperimentRecord base = run_coherent(Complex(a, 0.0), g);
            compare(base, run_coherent(Complex(a, 0.0), g, base.params.dim_signal * 3 / 2));
        }
    for (const int n : {0, 2, 5})
        for (const double g : {1.5, 2.0, 3.0}) {
            const ExperimentRecord base = run_fock(n, g);
            compare(base, run_fock(n, g, base.params.dim_signal * 3 / 2));
        }
    for (const double g : {1.5, 2.0, 3.0}) {
        const ExperimentRecord base = run_qubit(g);
        compare(base, run_qubit(g, base.params.dim_signal * 3 / 2));
    }
    const bool pass = worst_growth <= scenario_tol::convergence_slack;
    return {9, "truncation convergence", pass,
            fmt("max residual growth at 1.5x dim: %.2e (tol 1e-10)", worst_growth)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
    std::vector<CriterionResult> results;
    results.push_back(coherent_grid());
    results.push_back(fock_grid());
    results.push_back(qubit_checks());
    results.push_back(operator_identity());
    results.push_back(identity_limit());
    results.push_back(conditional_equivalence());
    results.push_back(cat_contrast());
    results.push_back(series_consistency());
    results.push_back(truncation_convergence());
    return results;
}

}  // namespace npa
