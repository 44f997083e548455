#include "core/fock.hpp"

#include <cmath>

namespace npa {

TwoModeState tensor(const SingleModeState& signal, const SingleModeState& idler) {
    Matrix amps = signal.amps * idler.amps.transpose();
    return TwoModeState(signal.trunc, idler.trunc, std::move(amps));
}

double norm_sq(const SingleModeState& s) { return s.amps.squaredNorm(); }

double norm_sq(const TwoModeState& s) { return s.amps.squaredNorm(); }

Complex inner(const SingleModeState& a, const SingleModeState& b) {
    if (a.trunc != b.trunc) throw DimensionMismatch("inner: truncation mismatch");
    return a.amps.dot(b.amps);
}

double fidelity(const SingleModeState& a, const SingleModeState& b) {
    return std::norm(inner(a, b));
}

DensityMatrix partial_trace_idler(const TwoModeState& state) {
    Matrix rho = state.amps * state.amps.adjoint();
    return DensityMatrix(state.trunc_signal, std::move(rho));
}

DensityMatrix pure_density(const SingleModeState& psi) {
    Matrix rho = psi.amps * psi.amps.adjoint();
    return DensityMatrix(psi.trunc, std::move(rho));
}

double purity(const DensityMatrix& rho) { return rho.rho.squaredNorm(); }

double trace(const DensityMatrix& rho) { return rho.rho.trace().real(); }

double hermiticity_defect(const DensityMatrix& rho) {
    return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SingleModeState resized(const SingleModeState& s, Truncation target) {
    if (target.dim == s.trunc.dim) return s;
    Vector amps = Vector::Zero(target.dim);
    if (target.dim >= s.trunc.dim) {
        amps.head(s.trunc.dim) = s.amps;
    } else {
        double dropped = s.amps.tail(s.trunc.dim - target.dim).squaredNorm();
        if (dropped > tol::norm_construction)
            throw TruncationFailure("resized: shrinking would drop squared amplitude " +
                                    std::to_string(dropped));
        amps = s.amps.head(target.dim);
    }
    return SingleModeState(target, std::move(amps), s.discarded_mass);
}

SingleModeState normalized(const SingleModeState& s) {
    double n = std::sqrt(norm_sq(s));
    if (n < tol::zero_probability)
        throw std::invalid_argument("normalized: state has (near-)zero norm");
    return SingleModeState(s.trunc, s.amps / n, s.discarded_mass);
}

}  // namespace npa
