#include "vqf/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vqf/resources.hpp"

namespace vqf {

namespace {

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// Reconstructs the P- and Q-family integers from a full assignment.
std::pair<std::uint64_t, std::uint64_t> read_factors(const std::map<BitVar, int>& assignment,
                                                     const FactoringInstance& inst) {
    std::uint64_t p = 0, q = 0;
    for (int i = 0; i < inst.n_p; ++i)
        if (auto it = assignment.find(BitVar::p(i)); it != assignment.end() && it->second)
            p |= std::uint64_t{1} << i;
    for (int i = 0; i < inst.n_q; ++i)
        if (auto it = assignment.find(BitVar::q(i)); it != assignment.end() && it->second)
            q |= std::uint64_t{1} << i;
    return {p, q};
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> reference_factors(std::uint64_t m) {
    const auto division = trial_division(m);
    if (!division.factor) throw NotBiprime(std::to_string(m) + " is prime");
    const std::uint64_t a = *division.factor;
    const std::uint64_t b = m / a;
    if (!is_prime(a) || !is_prime(b))
        throw NotBiprime(std::to_string(m) + " is not a product of two primes");
    return {std::max(a, b), std::min(a, b)};
}

SolutionManifold build_manifold(const ReducedSystem& reduced, std::uint64_t m) {
    const auto [pf, qf] = reference_factors(m);
    const auto& inst = reduced.instance;
    const int n = reduced.qubit_count;
    if (n > kDenseTableCap) throw TooManyQubits("manifold enumeration over " + std::to_string(n) +
                                                " qubits exceeds the cap");

    auto fits = [](std::uint64_t v, int bits) { return std::bit_width(v) <= bits; };

    SolutionManifold manifold;
    manifold.n = n;
    manifold.factor_p = pf;
    manifold.factor_q = qf;

    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < count; ++x) {
        std::map<BitVar, int> assignment;
        try {
            assignment = apply_ledger(reduced, x);
        } catch (const NonBinarySubstitution&) {
            continue;
        }
        const auto [p, q] = read_factors(assignment, inst);
        const bool p_correct = (p == pf && fits(pf, inst.n_p)) || (p == qf && fits(qf, inst.n_p));
        const bool q_correct = (q == qf && fits(qf, inst.n_q)) || (q == pf && fits(pf, inst.n_q));
        if (p_correct || q_correct) manifold.member_states.push_back(x);
    }
    manifold.fraction =
        static_cast<double>(manifold.member_states.size()) / static_cast<double>(count);
    return manifold;
}

std::pair<double, double> manifold_energy_stats(const SolutionManifold& manifold,
                                                const DiagonalHamiltonian& h) {
    if (manifold.n != h.n) throw SizeMismatch("manifold and Hamiltonian qubit counts differ");
    const auto& table = dense_table(h);
    double sum_in = 0.0, sum_out = 0.0;
    std::size_t member = 0;
    auto next = manifold.member_states.begin();
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        if (next != manifold.member_states.end() && *next == x) {
            sum_in += table[x];
            ++member;
            ++next;
        } else {
            sum_out += table[x];
        }
    }
    const std::size_t outside = table.size() - member;
    const double nan = std::nan("");
    return {member ? sum_in / static_cast<double>(member) : nan,
            outside ? sum_out / static_cast<double>(outside) : nan};
}

double overlap(const StateVector& state, const SolutionManifold& manifold) {
    if (state.n != manifold.n) throw SizeMismatch("state and manifold qubit counts differ");
    double p = 0.0;
    for (std::uint64_t x : manifold.member_states) p += std::norm(state.amps[x]);
    return p;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
decode(const ReducedSystem& reduced, std::uint64_t reduced_assignment) {
    std::map<BitVar, int> assignment;
    try {
        assignment = apply_ledger(reduced, reduced_assignment);
    } catch (const NonBinarySubstitution&) {
        return std::nullopt;
    }
    auto [p, q] = read_factors(assignment, reduced.instance);
    if (p < q) std::swap(p, q);
    const std::uint64_t m = reduced.instance.m;
    if (q > 1 && p < m && p * q == m) return std::make_pair(p, q);
    return std::nullopt;
}

} // namespace vqf
