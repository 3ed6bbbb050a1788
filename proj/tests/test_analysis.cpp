#include <doctest.h>

#include <bit>
#include <cmath>

#include "vqf/analysis.hpp"

using namespace vqf;

namespace {

struct Pipeline {
    ReducedSystem reduced;
    DiagonalHamiltonian h;
};

Pipeline pipeline_for(std::uint64_t m) {
    Pipeline p;
    p.reduced = simplify(build_clauses(build_instance(m)));
    p.h = quantize(p.reduced);
    return p;
}

} // namespace

TEST_SUITE("analysis") {

    TEST_CASE("reference_factors identifies odd biprimes") {
        CHECK(reference_factors(91) == std::make_pair<std::uint64_t, std::uint64_t>(13, 7));
        CHECK(reference_factors(25) == std::make_pair<std::uint64_t, std::uint64_t>(5, 5));
        CHECK_THROWS_AS(reference_factors(27), NotBiprime);
        CHECK_THROWS_AS(reference_factors(31), NotBiprime);
    }

    TEST_CASE("manifold membership needs a correct factor register") {
        const auto p = pipeline_for(91);
        const auto manifold = build_manifold(p.reduced, 91);
        CHECK(manifold.n == 10);
        CHECK(manifold.factor_p == 13);
        CHECK(manifold.factor_q == 7);
        CHECK(manifold.fraction ==
              static_cast<double>(manifold.member_states.size()) / 1024.0);
        CHECK(manifold.fraction > 0.0);
        CHECK(manifold.fraction < 1.0);

        // every zero-energy state has both factors correct, so it is a member
        const auto& table = dense_table(p.h);
        for (std::uint64_t x = 0; x < table.size(); ++x)
            if (table[x] == 0.0)
                CHECK(std::binary_search(manifold.member_states.begin(),
                                         manifold.member_states.end(), x));
    }

    TEST_CASE("a fully solved instance has a one-state manifold") {
        const auto reduced = simplify(build_clauses(build_instance(15)));
        REQUIRE(reduced.qubit_count == 0);
        const auto manifold = build_manifold(reduced, 15);
        CHECK(manifold.fraction == 1.0);
        CHECK(manifold.member_states == std::vector<std::uint64_t>{0});
    }

    TEST_CASE("manifold fraction shrinks from m=25 to m=247") {
        const auto first = build_manifold(pipeline_for(25).reduced, 25);
        const auto last = build_manifold(pipeline_for(247).reduced, 247);
        CHECK(last.fraction < first.fraction);
    }

    TEST_CASE("manifold energy means split members and non-members") {
        const auto p = pipeline_for(91);
        const auto manifold = build_manifold(p.reduced, 91);
        const auto [mean_in, mean_out] = manifold_energy_stats(manifold, p.h);
        CHECK(mean_in > 0.0);
        CHECK(mean_out > mean_in);

        // zero-energy members only
        SUBCASE("toy manifold with zero-energy members") {
            Clause cl;
            clause_add_term(cl, {BitVar::p(1)}, 1);
            clause_add_term(cl, {}, -1);
            ReducedSystem red;
            red.instance.m = 15;
            red.instance.n_p = 2;
            red.instance.n_q = 2;
            red.variables = {BitVar::p(1)};
            red.clauses = {cl};
            red.qubit_count = 1;
            const auto h = quantize(red);
            SolutionManifold toy;
            toy.n = 1;
            toy.member_states = {1};
            toy.fraction = 0.5;
            const auto [in_mean, out_mean] = manifold_energy_stats(toy, h);
            CHECK(in_mean == 0.0);
            CHECK(out_mean == 1.0);
        }
    }

    TEST_CASE("overlap is the member probability mass") {
        const auto p = pipeline_for(25);
        const auto manifold = build_manifold(p.reduced, 25);
        REQUIRE(!manifold.member_states.empty());

        StateVector basis;
        basis.n = manifold.n;
        basis.amps.assign(std::size_t{1} << manifold.n, cplx(0, 0));
        basis.amps[manifold.member_states[0]] = 1.0;
        CHECK(overlap(basis, manifold) == doctest::Approx(1.0));

        // first non-member
        std::uint64_t outsider = 0;
        while (std::binary_search(manifold.member_states.begin(), manifold.member_states.end(),
                                  outsider))
            ++outsider;
        basis.amps.assign(basis.amps.size(), cplx(0, 0));
        basis.amps[outsider] = 1.0;
        CHECK(overlap(basis, manifold) == doctest::Approx(0.0));

        StateVector uniform;
        uniform.n = manifold.n;
        uniform.amps.assign(std::size_t{1} << manifold.n,
                            cplx(std::pow(2.0, -manifold.n / 2.0), 0));
        CHECK(overlap(uniform, manifold) == doctest::Approx(manifold.fraction));

        SolutionManifold complement;
        complement.n = manifold.n;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << manifold.n); ++x)
            if (!std::binary_search(manifold.member_states.begin(), manifold.member_states.end(),
                                    x))
                complement.member_states.push_back(x);
        CHECK(overlap(uniform, manifold) + overlap(uniform, complement) == doctest::Approx(1.0));

        StateVector wrong;
        wrong.n = manifold.n + 1;
        wrong.amps.assign(std::size_t{1} << wrong.n, cplx(0, 0));
        CHECK_THROWS_AS(overlap(wrong, manifold), SizeMismatch);
    }

    TEST_CASE("decode recovers factors from the ground state") {
        const auto p = pipeline_for(91);
        const auto& table = dense_table(p.h);
        std::uint64_t argmin = 0;
        for (std::uint64_t x = 0; x < table.size(); ++x)
            if (table[x] < table[argmin]) argmin = x;
        const auto pq = decode(p.reduced, argmin);
        REQUIRE(pq.has_value());
        CHECK(pq->first == 13);
        CHECK(pq->second == 7);
    }

    TEST_CASE("decode rejects trivial and wrong products") {
        // all-zero assignment on an unreduced system decodes to p = q = 0
        const auto sys = build_clauses(build_instance(91, std::nullopt, false));
        const auto wrapped = as_reduced(sys);
        CHECK_FALSE(decode(wrapped, 0).has_value());
    }

    TEST_CASE("decode accepts any state of a prior-knowledge m=15 system") {
        const auto reduced = simplify(build_clauses(build_instance(15, std::make_pair(3, 2))));
        const std::uint64_t states = std::uint64_t{1} << reduced.qubit_count;
        int hits = 0;
        for (std::uint64_t x = 0; x < states; ++x) {
            const auto pq = decode(reduced, x);
            if (pq) {
                CHECK(pq->first == 5);
                CHECK(pq->second == 3);
                ++hits;
            }
        }
        CHECK(hits >= 1);
    }

    TEST_CASE("argmin decodes correctly across odd biprimes and regimes") {
        for (std::uint64_t m : {9, 21, 33, 49, 121, 187, 247}) {
            const auto factors = reference_factors(m);
            for (int regime = 0; regime < 2; ++regime) {
                std::optional<std::pair<int, int>> prior;
                if (regime == 1)
                    prior = std::make_pair(static_cast<int>(std::bit_width(factors.first)),
                                           static_cast<int>(std::bit_width(factors.second)));
                const auto reduced = simplify(build_clauses(build_instance(m, prior)));
                if (reduced.qubit_count == 0) {
                    try {
                        quantize(reduced);
                        FAIL("expected AlreadySolved");
                    } catch (const AlreadySolved& s) {
                        CHECK(s.p * s.q == m);
                    }
                    continue;
                }
                const auto h = quantize(reduced);
                const auto& table = dense_table(h);
                std::uint64_t argmin = 0;
                for (std::uint64_t x = 0; x < table.size(); ++x)
                    if (table[x] < table[argmin]) argmin = x;
                CHECK(table[argmin] == 0.0);
                const auto pq = decode(reduced, argmin);
                REQUIRE(pq.has_value());
                CHECK(pq->first * pq->second == m);
            }
        }
    }
}
