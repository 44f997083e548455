#pragma once

#include "core/fock.hpp"

#include <optional>

namespace npa {

// Dense complex matrix acting on a truncated one- or two-mode space.
// Two-mode operators use flattened indices idx = n_signal * dim_idler + n_idler.
struct OperatorMatrix {
    Truncation trunc_signal;
    std::optional<Truncation> trunc_idler;  // engaged for two-mode operators
    Matrix mat;

    OperatorMatrix(Truncation s, Matrix m) : trunc_signal(s), mat(std::move(m)) {
        if (mat.rows() != s.dim || mat.cols() != s.dim)
            throw DimensionMismatch("OperatorMatrix: shape != trunc.dim");
    }
    OperatorMatrix(Truncation s, Truncation i, Matrix m)
        : trunc_signal(s), trunc_idler(i), mat(std::move(m)) {
        const long n = static_cast<long>(s.dim) * i.dim;
        if (mat.rows() != n || mat.cols() != n)
            throw DimensionMismatch("OperatorMatrix: shape != dim_s * dim_i");
    }
    bool two_mode() const { return trunc_idler.has_value(); }
};

// Squeezing strength r >= 0 with derived gain g = cosh(r) and
// attenuation nu = 1/g.
struct SqueezerParams {
    double r;
    double g;
    double nu;

    static SqueezerParams from_r(double r);
    static SqueezerParams from_gain(double g);

  private:
    SqueezerParams(double r_, double g_) : r(r_), g(g_), nu(1.0 / g_) {}
};

// mat[n-1][n] = sqrt(n).
OperatorMatrix annihilation(Truncation trunc);
// Conjugate transpose of annihilation.
OperatorMatrix creation(Truncation trunc);

// e^A by scaling-and-squaring (Pade kernel). Input must be square.
Matrix matrix_exp(const Matrix& a);
OperatorMatrix matrix_exp(const OperatorMatrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

// exp of the truncated anti-Hermitian generator r(ab - a†b†), computed per
// invariant subspace of the conserved photon-number difference n_s - n_i;
// this equals the exponential of the full truncated generator exactly,
// because the generator never mixes those subspaces.
OperatorMatrix two_mode_squeezer_direct(const SqueezerParams& p, Truncation s, Truncation i);

// Schumaker-Caves factored form
//   (1/g) exp(-sqrt(g^2-1) a†b†/g) g^{-(a†a+b†b)} exp(sqrt(g^2-1) ab/g)
// with every factor built on the truncated space. The two exponentials are
// nilpotent-series sums, exact in finitely many terms.
OperatorMatrix two_mode_squeezer_factored(const SqueezerParams& p, Truncation s, Truncation i);

// exp(theta (a†b - ab†)) with theta = arccos(nu); on the single-photon
// subspace this is [[nu, sqrt(1-nu^2)], [-sqrt(1-nu^2), nu]], so heralding
// zero reflected photons on coherent input yields |nu*alpha> with no extra
// phase.
OperatorMatrix beam_splitter(double nu, Truncation s, Truncation i);

SingleModeState apply(const OperatorMatrix& op, const SingleModeState& state);
TwoModeState apply(const OperatorMatrix& op, const TwoModeState& state);

// Matrix-free application of the squeezer / beam splitter to a state,
// block-by-block over the conserved grading. Identical to applying the
// dense operator, but usable at truncations where the dense two-mode
// matrix would be prohibitively large.
TwoModeState apply_squeezer(const SqueezerParams& p, const TwoModeState& state);
TwoModeState apply_beam_splitter(double nu, const TwoModeState& state);

// max |(U†U - I)_ij|. Exploits the structural zeros of block-diagonal
// operators; the product is the same either way.
double unitarity_defect(const OperatorMatrix& op);

// Orthogonal exponential of the real antisymmetric tridiagonal matrix with
// G[j+1][j] = c[j] = -G[j][j+1], via the symmetric tridiagonal eigenproblem.
Eigen::MatrixXd exp_antisymmetric_tridiagonal(const Eigen::VectorXd& couplings);

}  // namespace npa
