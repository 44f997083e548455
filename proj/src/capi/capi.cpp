#include "npasim/npasim.h"

#include "core/experiments.hpp"
#include "core/fock.hpp"
#include "core/herald.hpp"
#include "core/states.hpp"
#include "core/verification.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct npasim_state {
    npa::SingleModeState value;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void copy_str(char* dst, std::size_t cap, const std::string& src) {
    std::snprintf(dst, cap, "%s", src.c_str());
}

npasim_status fail(npasim_status code, const char* message) {
    g_last_error = message;
    return code;
}

// Translates core exceptions into status codes; body must return NPASIM_OK
// on success.
template <typename Fn>
npasim_status guarded(Fn&& body) {
    try {
        return body();
    } catch (const npa::DimensionMismatch& e) {
        return fail(NPASIM_ERROR_DIMENSION_MISMATCH, e.what());
    } catch (const npa::TruncationFailure& e) {
        return fail(NPASIM_ERROR_TRUNCATION, e.what());
    } catch (const std::out_of_range& e) {
        return fail(NPASIM_ERROR_OUT_OF_RANGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NPASIM_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NPASIM_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(NPASIM_ERROR_INTERNAL, e.what());
    }
}

void init_record(npasim_record* rec) {
    std::memset(rec, 0, sizeof *rec);
    rec->alpha_re = rec->alpha_im = kNaN;
    rec->g = rec->nu = rec->guard_fraction = kNaN;
    rec->n = -1;
    rec->k = 0;
    rec->numeric_probability = rec->analytic_probability = kNaN;
    rec->fidelity = rec->max_residual = kNaN;
    rec->discarded_mass = rec->wall_time_ms = kNaN;
    rec->heralded_purity = rec->unheralded_purity = kNaN;
    rec->coherence_numeric = rec->coherence_analytic = kNaN;
    rec->column_diff_guarded = rec->column_diff_full = rec->unitarity_defect = kNaN;
    rec->amplitude_numeric_re = rec->amplitude_numeric_im = kNaN;
    rec->amplitude_analytic = kNaN;
    rec->amplitude_ratio_re = rec->amplitude_ratio_im = kNaN;
    rec->pass = 0;
}

void convert_record(const npa::ExperimentRecord& in, npasim_record* out) {
    init_record(out);
    copy_str(out->scenario, sizeof out->scenario, in.scenario);
    out->alpha_re = in.params.alpha.real();
    out->alpha_im = in.params.alpha.imag();
    out->g = in.params.g;
    out->nu = in.params.nu;
    out->n = in.params.n;
    out->k = in.params.k;
    out->dim_signal = in.params.dim_signal;
    out->dim_idler = in.params.dim_idler;
    out->guard_fraction = in.params.guard_fraction;
    out->numeric_probability = in.numeric_probability;
    out->analytic_probability = in.analytic_probability;
    out->fidelity = in.fidelity;
    out->max_residual = in.max_residual;
    out->discarded_mass = in.discarded_mass;
    out->wall_time_ms = in.wall_time_ms;
    for (const auto& [name, value] : in.metrics) {
        if (name == "heralded_purity") out->heralded_purity = value;
        else if (name == "unheralded_purity") out->unheralded_purity = value;
        else if (name == "coherence_numeric") out->coherence_numeric = value;
        else if (name == "coherence_analytic") out->coherence_analytic = value;
        else if (name == "column_diff_guarded") out->column_diff_guarded = value;
        else if (name == "column_diff_full") out->column_diff_full = value;
        else if (name == "unitarity_defect") out->unitarity_defect = value;
        else if (name == "amplitude_numeric_re") out->amplitude_numeric_re = value;
        else if (name == "amplitude_numeric_im") out->amplitude_numeric_im = value;
        else if (name == "amplitude_analytic") out->amplitude_analytic = value;
        else if (name == "amplitude_ratio_re") out->amplitude_ratio_re = value;
        else if (name == "amplitude_ratio_im") out->amplitude_ratio_im = value;
    }
    out->pass = in.pass ? 1 : 0;
    std::string detail;
    for (const auto& r : in.residuals) {
        if (r.ok) continue;
        if (!detail.empty()) detail += "; ";
        detail += r.name + "=" + std::to_string(r.value) +
                  " exceeds tol=" + std::to_string(r.tolerance);
    }
    copy_str(out->detail, sizeof out->detail, detail);
}

npasim_status run_attenuation(const npasim_state* input, double parameter, bool via_npa,
                              int work_dim, int k, npasim_state** conditional,
                              npasim_state** normalized, double* probability) {
    if (!input) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "input state is NULL");
    if (work_dim < 0) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "work_dim must be >= 0");
    if (conditional) *conditional = nullptr;
    if (normalized) *normalized = nullptr;
    return guarded([&] {
        const npa::HeraldOutcome out =
            via_npa ? npa::npa_attenuate(input->value, parameter, work_dim, k)
                    : npa::bs_attenuate(input->value, parameter, work_dim, k);
        if (probability) *probability = out.probability;
        if (conditional) *conditional = new npasim_state{out.conditional};
        if (normalized && out.normalized) *normalized = new npasim_state{*out.normalized};
        return NPASIM_OK;
    });
}

}  // namespace

extern "C" {

const char* npasim_status_name(npasim_status status) {
    switch (status) {
        case NPASIM_OK: return "ok";
        case NPASIM_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case NPASIM_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
        case NPASIM_ERROR_TRUNCATION: return "insufficient truncation";
        case NPASIM_ERROR_OUT_OF_RANGE: return "out of range";
        case NPASIM_ERROR_ZERO_PROBABILITY: return "zero probability";
        case NPASIM_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* npasim_last_error_message(void) { return g_last_error.c_str(); }

const char* npasim_version(void) { return "1.0.0"; }

int npasim_coherent_dim(double alpha_abs) {
    if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) return -1;
    return npa::coherent_truncation_dim(alpha_abs * alpha_abs);
}

int npasim_guarded_dim(int n_max, double g) {
    try {
        return npa::guarded_npa_dim(n_max, g);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return -1;
    }
}

npasim_status npasim_state_coherent(double alpha_re, double alpha_im, int dim,
                                    npasim_state** out) {
    if (!out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
    *out = nullptr;
    return guarded([&] {
        const npa::Complex alpha(alpha_re, alpha_im);
        *out = new npasim_state{dim > 0 ? npa::coherent(alpha, npa::Truncation(dim))
                                        : npa::coherent_auto(alpha)};
        return NPASIM_OK;
    });
}

npasim_status npasim_state_fock(int n, int dim, npasim_state** out) {
    if (!out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
    *out = nullptr;
    return guarded([&] {
        const int d = dim > 0 ? dim : n + 1;
        *out = new npasim_state{npa::fock_state(n, npa::Truncation(d))};
        return NPASIM_OK;
    });
}

npasim_status npasim_state_single_rail(double c0_re, double c0_im, double c1_re, double c1_im,
                                       int dim, npasim_state** out) {
    if (!out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
    *out = nullptr;
    return guarded([&] {
        const int d = dim > 0 ? dim : 2;
        *out = new npasim_state{npa::single_rail_qubit(npa::Complex(c0_re, c0_im),
                                                       npa::Complex(c1_re, c1_im),
                                                       npa::Truncation(d))};
        return NPASIM_OK;
    });
}

npasim_status npasim_state_cat(double alpha_re, double alpha_im, int sign, int dim,
                               npasim_state** out) {
    if (!out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
    *out = nullptr;
    return guarded([&] {
        const npa::Complex alpha(alpha_re, alpha_im);
        const int d = dim > 0 ? dim : npa::coherent_truncation_dim(std::norm(alpha));
        *out = new npasim_state{npa::cat_state(alpha, sign, npa::Truncation(d))};
        return NPASIM_OK;
    });
}

void npasim_state_destroy(npasim_state* state) { delete state; }

int npasim_state_dim(const npasim_state* state) { return state ? state->value.trunc.dim : -1; }

npasim_status npasim_state_amplitude(const npasim_state* state, int n, double* re, double* im) {
    if (!state) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "state is NULL");
    if (n < 0 || n >= state->value.trunc.dim)
        return fail(NPASIM_ERROR_OUT_OF_RANGE, "amplitude index out of range");
    if (re) *re = state->value.amps[n].real();
    if (im) *im = state->value.amps[n].imag();
    return NPASIM_OK;
}

npasim_status npasim_state_norm_sq(const npasim_state* state, double* out) {
    if (!state || !out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "NULL argument");
    *out = npa::norm_sq(state->value);
    return NPASIM_OK;
}

npasim_status npasim_state_discarded_mass(const npasim_state* state, double* out) {
    if (!state || !out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "NULL argument");
    *out = state->value.discarded_mass;
    return NPASIM_OK;
}

npasim_status npasim_fidelity(const npasim_state* a, const npasim_state* b, double* out) {
    if (!a || !b || !out) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] {
        *out = npa::fidelity(a->value, b->value);
        return NPASIM_OK;
    });
}

npasim_status npasim_npa_attenuate(const npasim_state* input, double g, int work_dim, int k,
                                   npasim_state** conditional, npasim_state** normalized,
                                   double* probability) {
    return run_attenuation(input, g, true, work_dim, k, conditional, normalized, probability);
}

npasim_status npasim_bs_attenuate(const npasim_state* input, double nu, int work_dim, int k,
                                  npasim_state** conditional, npasim_state** normalized,
                                  double* probability) {
    return run_attenuation(input, nu, false, work_dim, k, conditional, normalized, probability);
}

npasim_status npasim_run_coherent(double alpha_re, double alpha_im, double g, int dim, int k,
                                  npasim_record* record) {
    if (!record) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "record pointer is NULL");
    return guarded([&] {
        convert_record(npa::run_coherent(npa::Complex(alpha_re, alpha_im), g, dim, k), record);
        return NPASIM_OK;
    });
}

npasim_status npasim_run_fock(int n, double g, int dim, int k, npasim_record* record) {
    if (!record) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "record pointer is NULL");
    return guarded([&] {
        convert_record(npa::run_fock(n, g, dim, k), record);
        return NPASIM_OK;
    });
}

npasim_status npasim_run_qubit(double g, int dim, npasim_record* record) {
    if (!record) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "record pointer is NULL");
    return guarded([&] {
        convert_record(npa::run_qubit(g, dim), record);
        return NPASIM_OK;
    });
}

npasim_status npasim_run_cat(double alpha_re, double alpha_im, double g, int dim,
                             npasim_record* record) {
    if (!record) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "record pointer is NULL");
    return guarded([&] {
        convert_record(npa::run_cat(npa::Complex(alpha_re, alpha_im), g, dim), record);
        return NPASIM_OK;
    });
}

npasim_status npasim_run_op_equivalence(double g, int dim, double guard_fraction,
                                        npasim_record* record) {
    if (!record) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "record pointer is NULL");
    return guarded([&] {
        convert_record(npa::run_operator_equivalence(g, dim, guard_fraction), record);
        return NPASIM_OK;
    });
}

npasim_status npasim_verify_all(npasim_criterion* results, int capacity, int* count,
                                int* all_pass) {
    if (!count) return fail(NPASIM_ERROR_INVALID_ARGUMENT, "count pointer is NULL");
    if (capacity > 0 && !results)
        return fail(NPASIM_ERROR_INVALID_ARGUMENT, "results pointer is NULL");
    return guarded([&] {
        const std::vector<npa::CriterionResult> suite = npa::run_acceptance_suite();
        *count = static_cast<int>(suite.size());
        bool ok = true;
        for (int i = 0; i < *count; ++i) {
            ok = ok && suite[i].pass;
            if (i < capacity) {
                results[i].index = suite[i].index;
                copy_str(results[i].name, sizeof results[i].name, suite[i].name);
                results[i].pass = suite[i].pass ? 1 : 0;
                copy_str(results[i].detail, sizeof results[i].detail, suite[i].detail);
            }
        }
        if (all_pass) *all_pass = ok ? 1 : 0;
        return NPASIM_OK;
    });
}

}  // extern "C"
