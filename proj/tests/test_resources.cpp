#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "vqf/resources.hpp"

using namespace vqf;

namespace {

DiagonalHamiltonian with_grad_variance(double var, int n) {
    // trace_sq = var * 2^(3n-2); a constant diagonal c has trace_sq = c^2 2^n
    DiagonalHamiltonian h;
    h.n = n;
    h.poly[0] = std::sqrt(var * std::pow(2.0, 2 * n - 2));
    return h;
}

DiagonalHamiltonian hamiltonian_for(std::uint64_t m) {
    return quantize(simplify(build_clauses(build_instance(m))));
}

} // namespace

TEST_SUITE("resources") {

    TEST_CASE("shot and gate formulas match hand arithmetic") {
        const auto h = with_grad_variance(0.04, 2);
        CHECK(grad_variance(h) == doctest::Approx(0.04));
        CHECK(shots_per_gradient(h, 1, 0.02) == doctest::Approx(400.0));
        CHECK(gates_per_gradient(h, 1, 0.02) == doctest::Approx(2400.0));
        CHECK(gates_per_gradient(h, 1, 0.02) / shots_per_gradient(h, 1, 0.02) ==
              doctest::Approx(6.0)); // (2L+1) n
        CHECK(shots_per_gradient(h, 0, 0.02) ==
              doctest::Approx(2 * 0.04 / (0.02 * 0.02)));
    }

    TEST_CASE("default epsilon is sqrt(Var)/100") {
        CHECK(default_epsilon(with_grad_variance(1.0, 3)) == doctest::Approx(0.01));
        CHECK(default_epsilon(with_grad_variance(0.04, 3)) == doctest::Approx(0.002));
    }

    TEST_CASE("with the default epsilon, shots depend only on (L+1) n") {
        for (std::uint64_t m : {25, 49, 91, 247}) {
            const auto h = hamiltonian_for(m);
            const int L = h.n;
            const double shots = shots_per_gradient(h, L, default_epsilon(h));
            CHECK(shots == doctest::Approx((L + 1.0) * h.n * 1e4).epsilon(1e-12));
        }
    }

    TEST_CASE("trial division counts its trials") {
        auto r = trial_division(91);
        REQUIRE(r.factor.has_value());
        CHECK(*r.factor == 7);
        CHECK(r.divisions_used == 6);

        r = trial_division(25);
        CHECK(*r.factor == 5);
        CHECK(r.divisions_used == 4);

        r = trial_division(247);
        CHECK(*r.factor == 13);
        CHECK(r.divisions_used == 12);
        CHECK(trial_division_bound(247) == 14);

        r = trial_division(31); // prime: no factor, worst-case count
        CHECK_FALSE(r.factor.has_value());
        CHECK(r.divisions_used == trial_division_bound(31));
    }

    TEST_CASE("trial division stays within the worst-case bound") {
        for (std::uint64_t m = 4; m <= 1000; ++m)
            CHECK(trial_division(m).divisions_used <= std::max<std::uint64_t>(trial_division_bound(m), 1));
    }

    TEST_CASE("qubit counts reproduce the four reported instances") {
        CHECK(qubit_counts(25).preprocess_no_prior == 6);
        CHECK(qubit_counts(49).preprocess_no_prior == 8);
        CHECK(qubit_counts(91).preprocess_no_prior == 10);
        CHECK(qubit_counts(247).preprocess_no_prior == 13);
        CHECK_THROWS_AS(qubit_counts(27), NotBiprime);
    }

    TEST_CASE("prior knowledge never costs qubits") {
        for (std::uint64_t m : {9, 15, 21, 25, 33, 35, 49, 91, 143, 247}) {
            const auto c = qubit_counts(m);
            CHECK(c.preprocess_prior <= c.preprocess_no_prior);
            CHECK(c.no_preprocess_prior <= c.no_preprocess_no_prior);
            CHECK(c.preprocess_no_prior <= c.no_preprocess_no_prior);
        }
    }

    TEST_CASE("shots per gradient dwarf the trial-division baseline") {
        for (std::uint64_t m : {25, 49, 91, 247}) {
            const auto h = hamiltonian_for(m);
            const auto est = make_estimate(m, h, h.n);
            CHECK(est.shots_per_gradient >
                  100.0 * static_cast<double>(est.trial_division_bound));
            CHECK(est.gates_per_gradient > est.shots_per_gradient);
        }
    }

    TEST_CASE("extrapolation fits a line") {
        CHECK(extrapolate_qubits({{1, 1}, {2, 2}}, 10) == doctest::Approx(10.0));
        CHECK_THROWS_AS(extrapolate_qubits({{1, 1}}, 10), DegenerateFit);
        CHECK_THROWS_AS(extrapolate_qubits({{1, 1}, {1, 2}}, 10), DegenerateFit);
    }

    TEST_CASE("extrapolating the preprocessed counts to 2048-bit inputs") {
        std::vector<std::pair<double, double>> points;
        for (std::uint64_t m : {25, 49, 91, 247}) {
            const auto inst = build_instance(m);
            points.emplace_back(inst.n_m, qubit_counts(m).preprocess_no_prior);
        }
        const double qubits = extrapolate_qubits(points, 2048);
        CHECK(qubits > 1000.0);
        std::printf("[resources] linear fit predicts %.0f qubits for a 2048-bit modulus "
                    "(reported reference value: ~9300)\n",
                    qubits);
    }
}
