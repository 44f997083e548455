#include "core/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace npa;

namespace {

double metric(const ExperimentRecord& rec, const char* name) {
    for (const auto& [key, value] : rec.metrics)
        if (key == name) return value;
    FAIL("missing metric ", name);
    return 0.0;
}

}  // namespace

TEST_CASE("coherent runs") {
    const ExperimentRecord rec = run_coherent(Complex(1.0, 0.0), 2.0);
    CHECK(rec.pass);
    CHECK(rec.scenario == "coherent");
    CHECK(rec.params.dim_signal == 92);
    CHECK(1.0 - rec.fidelity <= 1e-8);
    CHECK(std::abs(rec.numeric_probability - rec.analytic_probability) /
              rec.analytic_probability <=
          1e-6);
    CHECK(rec.analytic_probability == doctest::Approx(0.1180916381852537).epsilon(1e-14));

    const ExperimentRecord vac = run_coherent(Complex(0.0, 0.0), 1.7);
    CHECK(vac.pass);
    CHECK(vac.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vac.numeric_probability == doctest::Approx(1.0 / (1.7 * 1.7)).epsilon(1e-10));

    const ExperimentRecord strong = run_coherent(Complex(2.0, 0.0), 3.0);
    CHECK(strong.pass);
    CHECK(1.0 - strong.fidelity <= 1e-8);
}

TEST_CASE("coherent run flags guard-band violations instead of clipping") {
    const ExperimentRecord rec = run_coherent(Complex(1.0, 0.0), 3.0, 24);
    CHECK_FALSE(rec.pass);
    bool found_failure = false;
    for (const auto& r : rec.residuals)
        if (!r.ok) {
            found_failure = true;
            CHECK(r.value > r.tolerance);
        }
    CHECK(found_failure);
}

TEST_CASE("coherent run reports impossible truncations") {
    CHECK_THROWS_AS(run_coherent(Complex(3.0, 0.0), 2.0, 10), TruncationFailure);
}

TEST_CASE("general-k coherent runs carry no analytic comparison") {
    const ExperimentRecord rec = run_coherent(Complex(0.6, 0.0), 1.6, 0, 2);
    CHECK(rec.pass);
    CHECK(rec.params.k == 2);
    CHECK(std::isnan(rec.analytic_probability));
    CHECK(rec.numeric_probability > 0.0);
    CHECK(rec.numeric_probability < 1.0);
}

TEST_CASE("fock runs") {
    const ExperimentRecord spot = run_fock(2, 2.0);
    CHECK(spot.pass);
    CHECK(metric(spot, "amplitude_analytic") == doctest::Approx(0.125));
    CHECK(std::abs(metric(spot, "amplitude_numeric_re") - 0.125) <= 1e-9);

    const ExperimentRecord identity = run_fock(5, 1.0);
    CHECK(identity.pass);
    CHECK(metric(identity, "amplitude_numeric_re") == doctest::Approx(1.0).epsilon(1e-12));

    const ExperimentRecord fractional = run_fock(3, 1.5);
    CHECK(fractional.pass);
    CHECK(metric(fractional, "amplitude_analytic") ==
          doctest::Approx(16.0 / 81.0).epsilon(1e-15));
}

TEST_CASE("qubit runs") {
    const ExperimentRecord rec = run_qubit(2.0);
    CHECK(rec.pass);
    CHECK(std::abs(rec.numeric_probability - 0.15625) <= 1e-9);
    CHECK(std::abs(metric(rec, "amplitude_ratio_re") - 0.5) <= 1e-9);

    const ExperimentRecord identity = run_qubit(1.0);
    CHECK(identity.pass);
    CHECK(identity.numeric_probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator equivalence runs") {
    const ExperimentRecord trivial = run_operator_equivalence(1.0, 20, 0.4);
    CHECK(trivial.pass);
    CHECK(metric(trivial, "column_diff_guarded") <= 1e-14);
    CHECK(metric(trivial, "column_diff_full") <= 1e-14);

    const ExperimentRecord rec = run_operator_equivalence(1.2, 60, 0.4);
    CHECK(rec.pass);
    CHECK(metric(rec, "column_diff_guarded") <= 1e-6);
    CHECK(metric(rec, "unitarity_defect") <= 1e-10);

    CHECK_THROWS_AS(run_operator_equivalence(1.2, 20, 1.5), std::invalid_argument);
}

TEST_CASE("cat comparison") {
    const ExperimentRecord rec = run_cat(Complex(1.0, 0.0), 2.0);
    CHECK(rec.pass);
    CHECK(1.0 - rec.fidelity <= 1e-6);
    CHECK(1.0 - metric(rec, "heralded_purity") <= 1e-10);
    CHECK(metric(rec, "unheralded_purity") == doctest::Approx(0.7670071538194776).epsilon(1e-10));
    CHECK(metric(rec, "unheralded_purity") < 1.0);
    CHECK(metric(rec, "coherence_numeric") ==
          doctest::Approx(0.22313016014842982).epsilon(1e-9));
    CHECK(rec.numeric_probability == doctest::Approx(0.16710291682246828).epsilon(1e-11));

    const ExperimentRecord identity = run_cat(Complex(1.0, 0.0), 1.0);
    CHECK(identity.pass);
    CHECK(identity.numeric_probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(1.0 - identity.fidelity <= 1e-10);
    CHECK(metric(identity, "unheralded_purity") == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sweeps") {
    SweepSpec spec;
    spec.scenario = Scenario::coherent;
    spec.alphas = {Complex(1.0, 0.0)};
    spec.gains = {1.0, 2.0};
    const std::vector<ExperimentRecord> records = sweep(spec);
    REQUIRE(records.size() == 2);
    CHECK(records[0].numeric_probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(records[1].numeric_probability == doctest::Approx(0.1180916381852537).epsilon(1e-10));

    SweepSpec empty;
    empty.scenario = Scenario::coherent;
    CHECK(sweep(empty).empty());

    // Bit-identical repeatability at fixed dims.
    const std::vector<ExperimentRecord> again = sweep(spec);
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(std::memcmp(&records[i].numeric_probability, &again[i].numeric_probability,
                          sizeof(double)) == 0);
        CHECK(std::memcmp(&records[i].fidelity, &again[i].fidelity, sizeof(double)) == 0);
        CHECK(std::memcmp(&records[i].max_residual, &again[i].max_residual, sizeof(double)) == 0);
    }
}

TEST_CASE("raising the truncation does not raise residuals") {
    struct Case {
        ExperimentRecord base, bigger, biggest;
    };
    const auto coherent_case = [&](double a, double g) {
        const ExperimentRecord base = run_coherent(Complex(a, 0.0), g);
        const int dim = base.params.dim_signal;
        return Case{base, run_coherent(Complex(a, 0.0), g, dim * 5 / 4),
                    run_coherent(Complex(a, 0.0), g, dim * 3 / 2)};
    };
    const auto check_case = [](const Case& c) {
        CHECK(c.bigger.max_residual <= c.base.max_residual + 1e-10);
        CHECK(c.biggest.max_residual <= c.base.max_residual + 1e-10);
    };
    check_case(coherent_case(1.0, 2.0));

    const ExperimentRecord fock_base = run_fock(2, 2.0);
    CHECK(run_fock(2, 2.0, fock_base.params.dim_signal * 3 / 2).max_residual <=
          fock_base.max_residual + 1e-10);

    const ExperimentRecord qubit_base = run_qubit(2.0);
    CHECK(run_qubit(2.0, qubit_base.params.dim_signal * 3 / 2).max_residual <=
          qubit_base.max_residual + 1e-10);
}
