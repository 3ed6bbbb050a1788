#pragma once

// Solution manifold: the basis states of the reduced system whose decoded
// p-bits or q-bits match a true factor, plus state decoding and overlap
// tracking.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vqf/simulator.hpp"

namespace vqf {

struct SolutionManifold {
    int n = 0;
    std::vector<std::uint64_t> member_states; // sorted basis indices
    double fraction = 0.0;                    // |members| / 2^n
    std::uint64_t factor_p = 0;               // reference factors, p >= q
    std::uint64_t factor_q = 0;
};

// The unique factorization m = p * q with p >= q > 1, both prime. Throws
// NotBiprime otherwise.
std::pair<std::uint64_t, std::uint64_t> reference_factors(std::uint64_t m);

// Enumerates the 2^n reduced basis states; a state is a member when its
// ledger push-through is binary-valid and its reconstructed p or q integer
// equals a true factor (either orientation, where the bit lengths permit).
SolutionManifold build_manifold(const ReducedSystem& reduced, std::uint64_t m);

// Mean energy over member and non-member states. A side without states
// yields NaN.
std::pair<double, double> manifold_energy_stats(const SolutionManifold& manifold,
                                                const DiagonalHamiltonian& h);

// Probability of observing a manifold state when sampling `state`.
double overlap(const StateVector& state, const SolutionManifold& manifold);

// Pushes a reduced assignment through the ledger and reconstructs (p, q);
// returns the pair (p >= q) iff p * q = m with 1 < q <= p < m.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
decode(const ReducedSystem& reduced, std::uint64_t reduced_assignment);

} // namespace vqf
