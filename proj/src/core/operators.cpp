#include "core/operators.hpp"

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

namespace npa {

namespace {

// One invariant subspace of a two-mode graded unitary: the Fock pairs it
// couples (in ladder order) and the nearest-neighbour generator couplings
// c[j] = G[j+1][j] = -G[j][j+1].
struct PairBlock {
    std::vector<std::pair<int, int>> levels;
    Eigen::VectorXd couplings;
};

// Blocks of conserved photon-number difference d = n_s - n_i. The generator
// r(ab - a†b†) creates and destroys photons in pairs, so it never couples
// different d.
std::vector<PairBlock> squeezer_blocks(double r, int dim_s, int dim_i) {
    std::vector<PairBlock> blocks;
    blocks.reserve(dim_s + dim_i - 1);
    for (int d = -(dim_i - 1); d <= dim_s - 1; ++d) {
        const int ni_lo = std::max(0, -d);
        const int ni_hi = std::min(dim_i - 1, dim_s - 1 - d);
        if (ni_hi < ni_lo) continue;
        PairBlock blk;
        const int m = ni_hi - ni_lo + 1;
        blk.levels.reserve(m);
        blk.couplings.resize(m - 1);
        for (int ni = ni_lo; ni <= ni_hi; ++ni) blk.levels.emplace_back(d + ni, ni);
        for (int j = 0; j + 1 < m; ++j) {
            const auto [ns, ni] = blk.levels[j];
            blk.couplings[j] = -r * std::sqrt(double(ns + 1) * double(ni + 1));
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

// Blocks of conserved total photon number t = n_s + n_i for the beam
// splitter generator theta (a†b - ab†).
std::vector<PairBlock> splitter_blocks(double theta, int dim_s, int dim_i) {
    std::vector<PairBlock> blocks;
    blocks.reserve(dim_s + dim_i - 1);
    for (int t = 0; t <= dim_s + dim_i - 2; ++t) {
        const int ni_lo = std::max(0, t - (dim_s - 1));
        const int ni_hi = std::min(dim_i - 1, t);
        if (ni_hi < ni_lo) continue;
        PairBlock blk;
        const int m = ni_hi - ni_lo + 1;
        blk.levels.reserve(m);
        blk.couplings.resize(m - 1);
        for (int ni = ni_lo; ni <= ni_hi; ++ni) blk.levels.emplace_back(t - ni, ni);
        for (int j = 0; j + 1 < m; ++j) {
            const auto [ns, ni] = blk.levels[j];
            blk.couplings[j] = -theta * std::sqrt(double(ns) * double(ni + 1));
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

OperatorMatrix assemble_blocks(const std::vector<PairBlock>& blocks, Truncation s, Truncation i) {
    const long n = static_cast<long>(s.dim) * i.dim;
    Matrix mat = Matrix::Zero(n, n);
    for (const auto& blk : blocks) {
        const Eigen::MatrixXd e = exp_antisymmetric_tridiagonal(blk.couplings);
        const int m = static_cast<int>(blk.levels.size());
        for (int q = 0; q < m; ++q) {
            const long col = static_cast<long>(blk.levels[q].first) * i.dim + blk.levels[q].second;
            for (int p = 0; p < m; ++p) {
                const long row =
                    static_cast<long>(blk.levels[p].first) * i.dim + blk.levels[p].second;
                mat(row, col) = e(p, q);
            }
        }
    }
    return OperatorMatrix(s, i, std::move(mat));
}

TwoModeState apply_blocks(const std::vector<PairBlock>& blocks, const TwoModeState& state) {
    Matrix out = Matrix::Zero(state.amps.rows(), state.amps.cols());
    for (const auto& blk : blocks) {
        const int m = static_cast<int>(blk.levels.size());
        Eigen::VectorXd re(m), im(m);
        bool occupied = false;
        for (int j = 0; j < m; ++j) {
            const Complex v = state.amps(blk.levels[j].first, blk.levels[j].second);
            re[j] = v.real();
            im[j] = v.imag();
            occupied = occupied || v != Complex(0.0);
        }
        // A block with no input amplitude contributes nothing: the evolution
        // never mixes blocks, so its output stays exactly zero.
        if (!occupied) continue;
        const Eigen::MatrixXd e = exp_antisymmetric_tridiagonal(blk.couplings);
        const Eigen::VectorXd yre = e * re;
        const Eigen::VectorXd yim = e * im;
        for (int j = 0; j < m; ++j)
            out(blk.levels[j].first, blk.levels[j].second) = Complex(yre[j], yim[j]);
    }
    return TwoModeState(state.trunc_signal, state.trunc_idler, std::move(out));
}

using SparseD = Eigen::SparseMatrix<double>;

// exp(sign * lambda * a b) (lower = true) or exp(sign * lambda * a†b†)
// (lower = false) on the truncated space, summed entrywise. Each column is a
// finite series: the operators are nilpotent once truncated.
SparseD pair_exponential_series(double lambda, bool lower, int dim_s, int dim_i) {
    std::vector<Eigen::Triplet<double>> trips;
    for (int ns = 0; ns < dim_s; ++ns) {
        for (int ni = 0; ni < dim_i; ++ni) {
            const long col = static_cast<long>(ns) * dim_i + ni;
            double term = 1.0;
            int k = 0;
            while (true) {
                const int ms = lower ? ns - k : ns + k;
                const int mi = lower ? ni - k : ni + k;
                trips.emplace_back(static_cast<long>(ms) * dim_i + mi, col, term);
                if (lower) {
                    if (k >= std::min(ns, ni)) break;
                    term *= lambda * std::sqrt(double(ns - k) * double(ni - k)) / (k + 1);
                } else {
                    if (ns + k + 1 > dim_s - 1 || ni + k + 1 > dim_i - 1) break;
                    term *= -lambda * std::sqrt(double(ns + k + 1) * double(ni + k + 1)) / (k + 1);
                }
                ++k;
            }
        }
    }
    SparseD m(static_cast<long>(dim_s) * dim_i, static_cast<long>(dim_s) * dim_i);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

}  // namespace

SqueezerParams SqueezerParams::from_r(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("SqueezerParams: r must be finite and >= 0");
    return SqueezerParams(r, std::cosh(r));
}

SqueezerParams SqueezerParams::from_gain(double g) {
    if (!(g >= 1.0) || !std::isfinite(g))
        throw std::invalid_argument("SqueezerParams: g must be finite and >= 1");
    return SqueezerParams(std::acosh(g), g);
}

OperatorMatrix annihilation(Truncation trunc) {
    Matrix a = Matrix::Zero(trunc.dim, trunc.dim);
    for (int n = 1; n < trunc.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return OperatorMatrix(trunc, std::move(a));
}

OperatorMatrix creation(Truncation trunc) {
    Matrix a = annihilation(trunc).mat.adjoint();
    return OperatorMatrix(trunc, std::move(a));
}

Matrix matrix_exp(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: input must be square");
    return a.exp();
}

OperatorMatrix matrix_exp(const OperatorMatrix& a) {
    if (a.two_mode()) return OperatorMatrix(a.trunc_signal, *a.trunc_idler, matrix_exp(a.mat));
    return OperatorMatrix(a.trunc_signal, matrix_exp(a.mat));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Eigen::MatrixXd exp_antisymmetric_tridiagonal(const Eigen::VectorXd& couplings) {
    const int m = static_cast<int>(couplings.size()) + 1;
    if (m == 1) return Eigen::MatrixXd::Ones(1, 1);

    // G = -i U S U† with U = diag(i^j) and S the real symmetric tridiagonal
    // matrix with off-diagonal c[j], so exp(G) = U Q e^{-i Lambda} Q^T U†.
    // The result is real; with C = Q cos(Lambda) Q^T and D = Q sin(Lambda) Q^T
    // the entries reduce to +-C or +-D by (p - q) mod 4.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(Eigen::VectorXd::Zero(m), couplings, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& q = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();

    const Eigen::MatrixXd c = q * lam.array().cos().matrix().asDiagonal() * q.transpose();
    const Eigen::MatrixXd d = q * lam.array().sin().matrix().asDiagonal() * q.transpose();

    Eigen::MatrixXd e(m, m);
    for (int col = 0; col < m; ++col) {
        for (int row = 0; row < m; ++row) {
            switch (((row - col) % 4 + 4) % 4) {
                case 0: e(row, col) = c(row, col); break;
                case 1: e(row, col) = d(row, col); break;
                case 2: e(row, col) = -c(row, col); break;
                default: e(row, col) = -d(row, col); break;
            }
        }
    }
    return e;
}

OperatorMatrix two_mode_squeezer_direct(const SqueezerParams& p, Truncation s, Truncation i) {
    return assemble_blocks(squeezer_blocks(p.r, s.dim, i.dim), s, i);
}

OperatorMatrix two_mode_squeezer_factored(const SqueezerParams& p, Truncation s, Truncation i) {
    const double lambda = std::sqrt(p.g * p.g - 1.0) / p.g;
    const SparseD raise = pair_exponential_series(lambda, false, s.dim, i.dim);
    const SparseD lower = pair_exponential_series(lambda, true, s.dim, i.dim);

    const long n = static_cast<long>(s.dim) * i.dim;
    Eigen::VectorXd gain_damp(n);
    for (int ns = 0; ns < s.dim; ++ns)
        for (int ni = 0; ni < i.dim; ++ni)
            gain_damp[static_cast<long>(ns) * i.dim + ni] = std::pow(p.g, -(ns + ni));

    SparseD product = raise * (gain_damp.asDiagonal() * lower);
    Matrix mat = (Eigen::MatrixXd(product) / p.g).cast<Complex>();
    return OperatorMatrix(s, i, std::move(mat));
}

OperatorMatrix beam_splitter(double nu, Truncation s, Truncation i) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::invalid_argument("beam_splitter: nu must lie in (0, 1]");
    return assemble_blocks(splitter_blocks(std::acos(nu), s.dim, i.dim), s, i);
}

SingleModeState apply(const OperatorMatrix& op, const SingleModeState& state) {
    if (op.two_mode() || op.trunc_signal != state.trunc)
        throw DimensionMismatch("apply: operator/state truncation mismatch");
    return SingleModeState(state.trunc, op.mat * state.amps);
}

TwoModeState apply(const OperatorMatrix& op, const TwoModeState& state) {
    if (!op.two_mode() || op.trunc_signal != state.trunc_signal ||
        *op.trunc_idler != state.trunc_idler)
        throw DimensionMismatch("apply: operator/state truncation mismatch");
    const int dim_i = state.trunc_idler.dim;
    Vector flat(op.mat.rows());
    for (int ns = 0; ns < state.trunc_signal.dim; ++ns)
        for (int ni = 0; ni < dim_i; ++ni)
            flat[static_cast<long>(ns) * dim_i + ni] = state.amps(ns, ni);
    flat = op.mat * flat;
    Matrix out(state.trunc_signal.dim, dim_i);
    for (int ns = 0; ns < state.trunc_signal.dim; ++ns)
        for (int ni = 0; ni < dim_i; ++ni)
            out(ns, ni) = flat[static_cast<long>(ns) * dim_i + ni];
    return TwoModeState(state.trunc_signal, state.trunc_idler, std::move(out));
}

TwoModeState apply_squeezer(const SqueezerParams& p, const TwoModeState& state) {
    return apply_blocks(squeezer_blocks(p.r, state.trunc_signal.dim, state.trunc_idler.dim),
                        state);
}

TwoModeState apply_beam_splitter(double nu, const TwoModeState& state) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::invalid_argument("apply_beam_splitter: nu must lie in (0, 1]");
    return apply_blocks(splitter_blocks(std::acos(nu), state.trunc_signal.dim,
                                        state.trunc_idler.dim),
                        state);
}

double unitarity_defect(const OperatorMatrix& op) {
    using SparseC = Eigen::SparseMatrix<Complex>;
    const SparseC u = op.mat.sparseView();
    SparseC product = SparseC(u.adjoint()) * u;
    double defect = 0.0;
    std::vector<bool> diag_seen(product.rows(), false);
    for (int k = 0; k < product.outerSize(); ++k) {
        for (SparseC::InnerIterator it(product, k); it; ++it) {
            const double expected = it.row() == it.col() ? 1.0 : 0.0;
            if (it.row() == it.col()) diag_seen[it.row()] = true;
            defect = std::max(defect, std::abs(it.value() - expected));
        }
    }
    for (long r = 0; r < product.rows(); ++r)
        if (!diag_seen[r]) defect = std::max(defect, 1.0);
    return defect;
}

}  // namespace npa
