#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace npa {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace tol {
// Normalization accepted at construction time.
inline constexpr double norm_construction = 1e-12;
// Normalization / hermiticity accepted after composite operations.
inline constexpr double norm_post_op = 1e-10;
// Herald probabilities below this leave the normalized state undefined.
inline constexpr double zero_probability = 1e-30;
// Poisson tail mass that may be dropped by state constructors.
inline constexpr double truncation_tail = 1e-14;
}  // namespace tol

// Thrown when two objects that must live on the same truncated space do not.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a requested truncation cannot represent a state to tolerance.
struct TruncationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Number of retained Fock levels; photon numbers run 0..dim-1.
struct Truncation {
    int dim;

    explicit Truncation(int d) : dim(d) {
        if (d < 1) throw std::invalid_argument("Truncation: dim must be >= 1");
    }
    bool operator==(const Truncation& o) const { return dim == o.dim; }
    bool operator!=(const Truncation& o) const { return dim != o.dim; }
};

// One bosonic mode on a truncated Fock space, amps[n] = <n|psi>.
// States are allowed to be unnormalized; the squared norm then carries
// physical meaning (herald success probability).
struct SingleModeState {
    Truncation trunc;
    Vector amps;
    // Probability mass dropped when the constructor truncated an
    // infinite expansion (coherent / cat states); zero otherwise.
    double discarded_mass = 0.0;

    SingleModeState(Truncation t, Vector a, double discarded = 0.0)
        : trunc(t), amps(std::move(a)), discarded_mass(discarded) {
        if (amps.size() != trunc.dim)
            throw DimensionMismatch("SingleModeState: amplitude length != trunc.dim");
    }
};

// Two bosonic modes, amps(n_signal, n_idler). Signal index first.
struct TwoModeState {
    Truncation trunc_signal;
    Truncation trunc_idler;
    Matrix amps;

    TwoModeState(Truncation s, Truncation i, Matrix a)
        : trunc_signal(s), trunc_idler(i), amps(std::move(a)) {
        if (amps.rows() != s.dim || amps.cols() != i.dim)
            throw DimensionMismatch("TwoModeState: amplitude shape != trunc dims");
    }
};

// Mixed single-mode state.
struct DensityMatrix {
    Truncation trunc;
    Matrix rho;

    DensityMatrix(Truncation t, Matrix m) : trunc(t), rho(std::move(m)) {
        if (rho.rows() != trunc.dim || rho.cols() != trunc.dim)
            throw DimensionMismatch("DensityMatrix: shape != trunc.dim");
    }
};

TwoModeState tensor(const SingleModeState& signal, const SingleModeState& idler);

double norm_sq(const SingleModeState& s);
double norm_sq(const TwoModeState& s);

// <a|b> on matching truncations.
Complex inner(const SingleModeState& a, const SingleModeState& b);

// |<a|b>|^2 for normalized states.
double fidelity(const SingleModeState& a, const SingleModeState& b);

// rho[m][n] = sum_k amps[m][k] conj(amps[n][k]).
DensityMatrix partial_trace_idler(const TwoModeState& state);

// Projector |psi><psi| of a normalized pure state.
DensityMatrix pure_density(const SingleModeState& psi);

// trace(rho^2); equals the squared Frobenius norm for Hermitian rho.
double purity(const DensityMatrix& rho);

double trace(const DensityMatrix& rho);
double hermiticity_defect(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

// Zero-pad (or shrink) a state to another truncation. Shrinking that would
// drop more than tol::norm_construction of squared amplitude throws.
SingleModeState resized(const SingleModeState& s, Truncation target);

SingleModeState normalized(const SingleModeState& s);

}  // namespace npa
