#include "core/herald.hpp"

#include "core/states.hpp"

#include <cmath>

namespace npa {

namespace {

HeraldOutcome make_outcome(SingleModeState conditional) {
    const double p = norm_sq(conditional);
    std::optional<SingleModeState> norm;
    if (p > tol::zero_probability)
        norm = SingleModeState(conditional.trunc, conditional.amps / std::sqrt(p),
                               conditional.discarded_mass);
    return HeraldOutcome{std::move(conditional), p, std::move(norm)};
}

// Embed the input as signal, vacuum as idler, on a work_dim x work_dim space.
TwoModeState seeded_two_mode(const SingleModeState& input, int work_dim) {
    const Truncation t(work_dim);
    Matrix amps = Matrix::Zero(work_dim, work_dim);
    amps.col(0).head(std::min(work_dim, input.trunc.dim)) =
        resized(input, t).amps.head(std::min(work_dim, input.trunc.dim));
    return TwoModeState(t, t, std::move(amps));
}

}  // namespace

HeraldOutcome herald_idler(const TwoModeState& state, int k) {
    if (k < 0 || k >= state.trunc_idler.dim)
        throw std::out_of_range("herald_idler: k must lie in [0, dim_idler)");
    SingleModeState conditional(state.trunc_signal, state.amps.col(k));
    return make_outcome(std::move(conditional));
}

Eigen::VectorXd herald_distribution(const TwoModeState& state) {
    return state.amps.cwiseAbs2().colwise().sum().real().transpose();
}

HeraldOutcome npa_attenuate(const SingleModeState& input, double g, int work_dim, int k) {
    const SqueezerParams params = SqueezerParams::from_gain(g);
    if (work_dim == 0) work_dim = guarded_npa_dim(input.trunc.dim - 1, g);
    const TwoModeState seeded = seeded_two_mode(input, work_dim);
    return herald_idler(apply_squeezer(params, seeded), k);
}

HeraldOutcome bs_attenuate(const SingleModeState& input, double nu, int work_dim, int k) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::invalid_argument("bs_attenuate: nu must lie in (0, 1]");
    if (work_dim == 0) work_dim = std::max(input.trunc.dim, 2);
    const TwoModeState seeded = seeded_two_mode(input, work_dim);
    return herald_idler(apply_beam_splitter(nu, seeded), k);
}

}  // namespace npa
