/*
 * npasim - heralded noiseless parametric attenuation on truncated Fock spaces.
 *
 * C interface to the simulation core. All functions return a status code;
 * results are written through out-parameters. Objects returned as opaque
 * handles must be released with the matching destroy function. Handles are
 * immutable after creation and safe to share across threads; the
 * last-error message is thread-local.
 */
#ifndef NPASIM_H
#define NPASIM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum npasim_status {
    NPASIM_OK = 0,
    NPASIM_ERROR_INVALID_ARGUMENT = 1,
    NPASIM_ERROR_DIMENSION_MISMATCH = 2,
    NPASIM_ERROR_TRUNCATION = 3,
    NPASIM_ERROR_OUT_OF_RANGE = 4,
    NPASIM_ERROR_ZERO_PROBABILITY = 5,
    NPASIM_ERROR_INTERNAL = 6
} npasim_status;

const char* npasim_status_name(npasim_status status);

/* Human-readable detail for the most recent failure on this thread. */
const char* npasim_last_error_message(void);

const char* npasim_version(void);

/* ------------------------------------------------------------------ */
/* Truncation sizing                                                    */

/* Smallest Fock-space dimension whose Poisson(|alpha|^2) tail mass is
 * at most 1e-14. */
int npasim_coherent_dim(double alpha_abs);

/* Working dimension for states of support n_max feeding the attenuator
 * at gain g (guard-band rule). Returns a negative value on bad input. */
int npasim_guarded_dim(int n_max, double g);

/* ------------------------------------------------------------------ */
/* States                                                               */

typedef struct npasim_state npasim_state;

/* dim = 0 picks the smallest adequate truncation. */
npasim_status npasim_state_coherent(double alpha_re, double alpha_im, int dim,
                                    npasim_state** out);
npasim_status npasim_state_fock(int n, int dim, npasim_state** out);
npasim_status npasim_state_single_rail(double c0_re, double c0_im, double c1_re, double c1_im,
                                       int dim, npasim_state** out);
/* sign must be +1 or -1. */
npasim_status npasim_state_cat(double alpha_re, double alpha_im, int sign, int dim,
                               npasim_state** out);
void npasim_state_destroy(npasim_state* state);

int npasim_state_dim(const npasim_state* state);
npasim_status npasim_state_amplitude(const npasim_state* state, int n, double* re, double* im);
npasim_status npasim_state_norm_sq(const npasim_state* state, double* out);
npasim_status npasim_state_discarded_mass(const npasim_state* state, double* out);
npasim_status npasim_fidelity(const npasim_state* a, const npasim_state* b, double* out);

/* ------------------------------------------------------------------ */
/* Heralded attenuation                                                 */

/* Evolve (input, vacuum) under the two-mode squeezer of gain g >= 1 and
 * herald k idler photons (k = 0 for noiseless attenuation). work_dim = 0
 * picks the guard-band truncation. On success *conditional holds the
 * unnormalized post-herald state, *probability its squared norm, and
 * *normalized the unit-norm state (NULL when the probability is
 * numerically zero). Either state pointer may be NULL if not wanted. */
npasim_status npasim_npa_attenuate(const npasim_state* input, double g, int work_dim, int k,
                                   npasim_state** conditional, npasim_state** normalized,
                                   double* probability);

/* Beam-splitter baseline with amplitude transmittance nu in (0, 1],
 * heralding k photons in the reflected mode. */
npasim_status npasim_bs_attenuate(const npasim_state* input, double nu, int work_dim, int k,
                                  npasim_state** conditional, npasim_state** normalized,
                                  double* probability);

/* ------------------------------------------------------------------ */
/* Scenario runners                                                     */

/* Superset of the per-scenario results; fields that do not apply to the
 * executed scenario are NaN (or -1 for integers). */
typedef struct npasim_record {
    char scenario[16];
    double alpha_re, alpha_im;
    double g, nu;
    int n, k;
    int dim_signal, dim_idler;
    double guard_fraction;
    double numeric_probability;
    double analytic_probability;
    double fidelity;
    double max_residual;
    double discarded_mass;
    double wall_time_ms;
    double heralded_purity;
    double unheralded_purity;
    double coherence_numeric;
    double coherence_analytic;
    double column_diff_guarded;
    double column_diff_full;
    double unitarity_defect;
    double amplitude_numeric_re, amplitude_numeric_im;
    double amplitude_analytic;
    double amplitude_ratio_re, amplitude_ratio_im;
    int pass;
    char detail[256];
} npasim_record;

/* dim = 0 picks the guard-band truncation. */
npasim_status npasim_run_coherent(double alpha_re, double alpha_im, double g, int dim, int k,
                                  npasim_record* record);
npasim_status npasim_run_fock(int n, double g, int dim, int k, npasim_record* record);
npasim_status npasim_run_qubit(double g, int dim, npasim_record* record);
npasim_status npasim_run_cat(double alpha_re, double alpha_im, double g, int dim,
                             npasim_record* record);
npasim_status npasim_run_op_equivalence(double g, int dim, double guard_fraction,
                                        npasim_record* record);

/* ------------------------------------------------------------------ */
/* Verification suite                                                   */

typedef struct npasim_criterion {
    int index;
    char name[128];
    int pass;
    char detail[512];
} npasim_criterion;

/* Runs every verification criterion. Writes up to capacity results and
 * stores the total count in *count (call with capacity 0 to query the
 * count). *all_pass is 1 iff every criterion passed. */
npasim_status npasim_verify_all(npasim_criterion* results, int capacity, int* count,
                                int* all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NPASIM_H */
