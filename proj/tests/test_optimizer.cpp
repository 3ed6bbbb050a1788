#include <doctest.h>

#include <atomic>
#include <cmath>

#include "vqf/optimizer.hpp"

using namespace vqf;

namespace {

DiagonalHamiltonian hamiltonian_for(std::uint64_t m) {
    return quantize(simplify(build_clauses(build_instance(m))));
}

} // namespace

TEST_SUITE("optimizer") {

    TEST_CASE("quadratic bowl converges quickly") {
        const Objective f = [](const std::vector<double>& x) {
            double s = 0;
            for (double v : x) s += (v - 1) * (v - 1);
            return s;
        };
        const GradientFn g = [](const std::vector<double>& x) {
            std::vector<double> out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2 * (x[i] - 1);
            return out;
        };
        const auto rec = minimize(f, g, std::vector<double>(4, 0.0), BFGSConfig{});
        CHECK(rec.converged);
        CHECK(rec.gradient_evals <= 30);
        double dist = 0;
        for (double v : rec.final_params) dist += (v - 1) * (v - 1);
        CHECK(std::sqrt(dist) < 1e-6);
    }

    TEST_CASE("constant objective converges at the first gradient check") {
        const Objective f = [](const std::vector<double>&) { return 3.5; };
        const GradientFn g = [](const std::vector<double>& x) {
            return std::vector<double>(x.size(), 0.0);
        };
        const auto rec = minimize(f, g, {0.1, 0.2}, BFGSConfig{});
        CHECK(rec.converged);
        CHECK(rec.gradient_evals == 1);
        CHECK(rec.final_energy == 3.5);
    }

    TEST_CASE("Rosenbrock reaches the standard tolerance") {
        const Objective f = [](const std::vector<double>& x) {
            return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
        };
        const GradientFn g = [](const std::vector<double>& x) {
            return std::vector<double>{
                -400 * x[0] * (x[1] - x[0] * x[0]) - 2 * (1 - x[0]),
                200 * (x[1] - x[0] * x[0])};
        };
        const auto rec = minimize(f, g, {-1.2, 1.0}, BFGSConfig{});
        CHECK(rec.final_energy < 1e-8);
    }

    TEST_CASE("non-finite objectives are reported") {
        const Objective f = [](const std::vector<double>& x) {
            return x[0] > 0.5 ? std::nan("") : x[0] * x[0];
        };
        const GradientFn g = [](const std::vector<double>& x) {
            return std::vector<double>{2 * x[0]};
        };
        CHECK_THROWS_AS(minimize(f, g, {1.0}, BFGSConfig{}), NonFiniteValue);
    }

    TEST_CASE("gradient evaluations are counted exactly") {
        std::atomic<long long> calls{0};
        const Objective f = [](const std::vector<double>& x) {
            double s = 0;
            for (double v : x) s += std::pow(v - 2, 4) + 0.5 * (v - 2) * (v - 2);
            return s;
        };
        const GradientFn g = [&](const std::vector<double>& x) {
            ++calls;
            std::vector<double> out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                out[i] = 4 * std::pow(x[i] - 2, 3) + (x[i] - 2);
            return out;
        };
        const auto rec = minimize(f, g, {0.0, 5.0}, BFGSConfig{});
        CHECK(rec.gradient_evals == calls.load());
        CHECK(rec.gradient_evals >= 1);
    }

    TEST_CASE("quantile uses linear interpolation") {
        CHECK(quantile({0.0, 1.0}, 0.5) == doctest::Approx(0.5));
        CHECK(quantile({1, 2, 3, 4, 5}, 0.0) == doctest::Approx(1.0));
        CHECK(quantile({10, 20, 30, 40}, 0.05) == doctest::Approx(11.5));
        CHECK(quantile({4, 2}, 1.0) == doctest::Approx(4.0));
        CHECK_THROWS_AS(quantile({}, 0.5), EmptyInput);
    }

    TEST_CASE("single-restart stats collapse to that run") {
        const auto h = hamiltonian_for(25);
        const auto circuit = build_cx_ansatz(h.n, 2);
        const auto stats = multistart(circuit, h, 1, 42, BFGSConfig{});
        REQUIRE(stats.records.size() == 1);
        CHECK(stats.mean == stats.records[0].final_energy);
        CHECK(stats.q05 == stats.records[0].final_energy);
        CHECK(stats.q95 == stats.records[0].final_energy);
    }

    TEST_CASE("multistart is deterministic and job-count independent") {
        const auto h = hamiltonian_for(25);
        const auto circuit = build_cx_ansatz(h.n, 2);
        const auto a = multistart(circuit, h, 6, 1234, BFGSConfig{}, 1);
        const auto b = multistart(circuit, h, 6, 1234, BFGSConfig{}, 3);
        REQUIRE(a.records.size() == b.records.size());
        CHECK(a.mean == b.mean);
        CHECK(a.q05 == b.q05);
        CHECK(a.q95 == b.q95);
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].seed == b.records[i].seed);
            CHECK(a.records[i].final_energy == b.records[i].final_energy);
            CHECK(a.records[i].gradient_evals == b.records[i].gradient_evals);
            CHECK(a.records[i].final_params == b.records[i].final_params);
        }
    }

    TEST_CASE("multistart finds the ground state of m=25") {
        const auto h = hamiltonian_for(25);
        const auto circuit = build_cx_ansatz(h.n, h.n);
        const auto stats = multistart(circuit, h, 20, 7, BFGSConfig{});
        bool ground = false;
        for (const auto& rec : stats.records) ground = ground || rec.final_energy < 1e-6;
        CHECK(ground);
        CHECK(stats.q05 <= stats.q95);
    }

    TEST_CASE("accepted steps never increase the energy") {
        const auto h = hamiltonian_for(25);
        const auto circuit = build_t_ansatz(h.n, h.n);
        const auto stats = multistart(circuit, h, 5, 99, BFGSConfig{});
        for (const auto& rec : stats.records) {
            // the initial angles are reproducible from (base_seed, restart)
            SplitMix64 rng(mix_seed(99, static_cast<std::uint64_t>(rec.seed)));
            std::vector<double> theta0(circuit.param_count);
            for (double& t : theta0) t = rng.next_double() * 2 * std::numbers::pi;
            const double e0 = expectation(run_product(circuit, theta0), h);
            CHECK(rec.final_energy <= e0 + 1e-12);
        }
    }
}
