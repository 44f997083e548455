#include "core/operators.hpp"
#include "core/states.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace npa;

namespace {

Matrix squeezer_generator(double r, const Truncation& s, const Truncation& i) {
    const Matrix a = annihilation(s).mat;
    const Matrix b = annihilation(i).mat;
    return r * (kron(a, b) - kron(a.adjoint(), b.adjoint()));
}

Matrix splitter_generator(double theta, const Truncation& s, const Truncation& i) {
    const Matrix a = annihilation(s).mat;
    const Matrix b = annihilation(i).mat;
    return theta * (kron(a.adjoint(), b) - kron(a, b.adjoint()));
}

}  // namespace

TEST_CASE("squeezer parameters") {
    const SqueezerParams p = SqueezerParams::from_gain(2.0);
    CHECK(p.g == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::cosh(p.r) == doctest::Approx(p.g).epsilon(1e-14));
    CHECK(p.nu == doctest::Approx(0.5).epsilon(1e-15));
    // acosh(2) is ln(2 + sqrt(3)).
    CHECK(p.r == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-14));

    CHECK(SqueezerParams::from_r(0.0).g == doctest::Approx(1.0));
    CHECK_THROWS_AS(SqueezerParams::from_gain(0.5), std::invalid_argument);
    CHECK_THROWS_AS(SqueezerParams::from_r(-0.1), std::invalid_argument);
}

TEST_CASE("ladder operators") {
    const Truncation t6(6);
    const OperatorMatrix a = annihilation(t6);

    CHECK((apply(a, fock_state(1, t6)).amps - fock_state(0, t6).amps).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK(norm_sq(apply(a, fock_state(0, t6))) == doctest::Approx(0.0));
    const SingleModeState lowered = apply(a, fock_state(4, t6));
    CHECK(lowered.amps[3].real() == doctest::Approx(2.0).epsilon(1e-15));

    // [a, a†] = 1 away from the cutoff level.
    const Matrix comm = a.mat * a.mat.adjoint() - a.mat.adjoint() * a.mat;
    const Matrix defect = comm - Matrix::Identity(6, 6);
    CHECK(defect.topLeftCorner(5, 5).cwiseAbs().maxCoeff() < 1e-12);

    CHECK((creation(t6).mat - a.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix exponential basics") {
    CHECK((matrix_exp(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-15);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    const Matrix e = matrix_exp(d);
    CHECK(e(0, 0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(e(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(matrix_exp(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("antisymmetric tridiagonal exponential matches the generic kernel") {
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> normal;
    for (const int m : {1, 2, 3, 5, 8, 12}) {
        Eigen::VectorXd c(m - 1);
        for (int j = 0; j + 1 < m; ++j) c[j] = 3.0 * normal(rng);
        const Eigen::MatrixXd e = exp_antisymmetric_tridiagonal(c);

        Matrix g = Matrix::Zero(m, m);
        for (int j = 0; j + 1 < m; ++j) {
            g(j + 1, j) = c[j];
            g(j, j + 1) = -c[j];
        }
        CHECK((e.cast<Complex>() - matrix_exp(g)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((e.transpose() * e - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <
              1e-13);
    }
}

TEST_CASE("direct squeezer equals the exponential of the truncated generator") {
    const Truncation s(9), i(8);
    const SqueezerParams p = SqueezerParams::from_gain(2.0);
    const Matrix full = matrix_exp(squeezer_generator(p.r, s, i));
    const OperatorMatrix blockwise = two_mode_squeezer_direct(p, s, i);
    CHECK((full - blockwise.mat).cwiseAbs().maxCoeff() < 1e-12);

    // Photon-number difference is conserved; checked on the generic
    // exponential so the block structure is not assumed.
    double leak = 0.0;
    for (int ns = 0; ns < s.dim; ++ns)
        for (int ni = 0; ni < i.dim; ++ni)
            for (int ms = 0; ms < s.dim; ++ms)
                for (int mi = 0; mi < i.dim; ++mi)
                    if (ms - mi != ns - ni)
                        leak = std::max(leak, std::abs(full(ms * i.dim + mi, ns * i.dim + ni)));
    CHECK(leak < 1e-12);
}

TEST_CASE("squeezer on two-mode vacuum") {
    for (const double g : {1.2, 2.0, 3.0}) {
        // Guard-band sized so that truncation error stays below the pinned
        // 1e-12 comparison.
        const Truncation t(std::max(guarded_npa_dim(1, g), 40));
        const SqueezerParams p = SqueezerParams::from_gain(g);
        const TwoModeState vac = tensor(fock_state(0, t), fock_state(0, t));
        const TwoModeState out = apply_squeezer(p, vac);
        CHECK(out.amps(0, 0).real() == doctest::Approx(1.0 / g).epsilon(1e-12));
        const double tanh_r = std::sqrt(g * g - 1.0) / g;
        CHECK(out.amps(1, 1).real() == doctest::Approx(-tanh_r / g).epsilon(1e-12));
        CHECK(std::abs(out.amps(1, 1)) ==
              doctest::Approx(std::sqrt(g * g - 1.0) / (g * g)).epsilon(1e-12));
        CHECK(std::abs(out.amps(1, 0)) < 1e-15);
    }
}

TEST_CASE("squeezer at r = 0 is the identity") {
    const Truncation t(7);
    const OperatorMatrix id = two_mode_squeezer_direct(SqueezerParams::from_r(0.0), t, t);
    CHECK((id.mat - Matrix::Identity(49, 49)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("factored squeezer") {
    const Truncation s(9), i(8);

    SUBCASE("g = 1 collapses to the identity") {
        const OperatorMatrix f = two_mode_squeezer_factored(SqueezerParams::from_gain(1.0), s, i);
        CHECK((f.mat - Matrix::Identity(72, 72)).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("the pair-annihilation exponential fixes coherent (x) vacuum") {
        const double lambda = std::sqrt(3.0) / 2.0;  // g = 2
        const Truncation t(18);
        const Matrix e2 = matrix_exp(lambda * kron(annihilation(t).mat, annihilation(t).mat));
        const TwoModeState seeded = tensor(coherent(0.8, t), fock_state(0, t));
        const TwoModeState mapped = apply(OperatorMatrix(t, t, e2), seeded);
        CHECK((mapped.amps - seeded.amps).cwiseAbs().maxCoeff() < 1e-13);
    }

    SUBCASE("matches the direct exponential on guard-band sized spaces") {
        // Full-column agreement for inputs within the adaptive guard
        // dim/2 - 4 r sqrt(dim).
        const SqueezerParams p = SqueezerParams::from_gain(1.1);
        const Truncation t(40);
        const OperatorMatrix direct = two_mode_squeezer_direct(p, t, t);
        const OperatorMatrix factored = two_mode_squeezer_factored(p, t, t);
        const int guard = static_cast<int>(40 / 2 - 4.0 * p.r * std::sqrt(40.0));
        REQUIRE(guard > 0);
        double worst = 0.0;
        for (int ns = 0; ns < t.dim; ++ns)
            for (int ni = 0; ni < t.dim; ++ni)
                if (ns + ni <= guard)
                    worst = std::max(
                        worst,
                        (direct.mat.col(ns * t.dim + ni) - factored.mat.col(ns * t.dim + ni))
                            .norm());
        CHECK(worst < 1e-6);
    }

    SUBCASE("matches the direct exponential on the guarded subspace at gain 2") {
        // Guard-band sizing for support <= 2 at g = 2 asks for 64 levels.
        const SqueezerParams p = SqueezerParams::from_gain(2.0);
        const Truncation t(64);
        const OperatorMatrix direct = two_mode_squeezer_direct(p, t, t);
        const OperatorMatrix factored = two_mode_squeezer_factored(p, t, t);
        std::vector<long> guarded;
        for (int ns = 0; ns < t.dim; ++ns)
            for (int ni = 0; ni < t.dim; ++ni)
                if (ns + ni <= 2) guarded.push_back(long(ns) * t.dim + ni);
        double worst = 0.0;
        for (const long col : guarded) {
            double sq = 0.0;
            for (const long row : guarded)
                sq += std::norm(direct.mat(row, col) - factored.mat(row, col));
            worst = std::max(worst, std::sqrt(sq));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("direct squeezer is unitary at r = 2 on 60 levels") {
    const Truncation t(60);
    const OperatorMatrix u = two_mode_squeezer_direct(SqueezerParams::from_r(2.0), t, t);
    CHECK(unitarity_defect(u) < 1e-10);
}

TEST_CASE("beam splitter") {
    const Truncation t(12);

    SUBCASE("nu = 1 is the identity") {
        const OperatorMatrix id = beam_splitter(1.0, t, t);
        CHECK((id.mat - Matrix::Identity(144, 144)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("single-photon convention") {
        const double nu = 0.6;
        const OperatorMatrix u = beam_splitter(nu, t, t);
        const long i10 = 1 * t.dim + 0, i01 = 0 * t.dim + 1;
        CHECK(u.mat(i10, i10).real() == doctest::Approx(nu).epsilon(1e-14));
        CHECK(u.mat(i01, i01).real() == doctest::Approx(nu).epsilon(1e-14));
        CHECK(u.mat(i10, i01).real() == doctest::Approx(std::sqrt(1 - nu * nu)).epsilon(1e-14));
        CHECK(u.mat(i01, i10).real() == doctest::Approx(-std::sqrt(1 - nu * nu)).epsilon(1e-14));
    }

    SUBCASE("matches the generic exponential and conserves total photons") {
        const double nu = 0.35;
        const Matrix full = matrix_exp(splitter_generator(std::acos(nu), t, t));
        const OperatorMatrix blockwise = beam_splitter(nu, t, t);
        CHECK((full - blockwise.mat).cwiseAbs().maxCoeff() < 1e-12);
        double leak = 0.0;
        for (int ns = 0; ns < t.dim; ++ns)
            for (int ni = 0; ni < t.dim; ++ni)
                for (int ms = 0; ms < t.dim; ++ms)
                    for (int mi = 0; mi < t.dim; ++mi)
                        if (ms + mi != ns + ni)
                            leak = std::max(leak,
                                            std::abs(full(ms * t.dim + mi, ns * t.dim + ni)));
        CHECK(leak < 1e-12);
    }

    SUBCASE("unitary") { CHECK(unitarity_defect(beam_splitter(0.3, t, t)) < 1e-10); }

    SUBCASE("rejects transmittance outside (0, 1]") {
        CHECK_THROWS_AS(beam_splitter(0.0, t, t), std::invalid_argument);
        CHECK_THROWS_AS(beam_splitter(1.2, t, t), std::invalid_argument);
    }
}

TEST_CASE("block application agrees with dense operators") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    const Truncation t(14);
    Matrix amps(14, 14);
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) amps(i, j) = Complex(normal(rng), normal(rng));
    amps /= amps.norm();
    const TwoModeState state(t, t, amps);

    const SqueezerParams p = SqueezerParams::from_gain(1.7);
    const TwoModeState via_blocks = apply_squeezer(p, state);
    const TwoModeState via_dense = apply(two_mode_squeezer_direct(p, t, t), state);
    CHECK((via_blocks.amps - via_dense.amps).cwiseAbs().maxCoeff() < 1e-12);

    const TwoModeState bs_blocks = apply_beam_splitter(0.55, state);
    const TwoModeState bs_dense = apply(beam_splitter(0.55, t, t), state);
    CHECK((bs_blocks.amps - bs_dense.amps).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply rejects mismatched truncations") {
    const Truncation t4(4), t5(5);
    CHECK_THROWS_AS(apply(annihilation(t4), fock_state(0, t5)), DimensionMismatch);
    const TwoModeState two = tensor(fock_state(0, t4), fock_state(0, t4));
    CHECK_THROWS_AS(apply(annihilation(t4), two), DimensionMismatch);
}
