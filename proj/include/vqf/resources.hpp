#pragma once

// Closed-form resource estimates for one gradient evaluation, the qubit-count
// regimes, linear extrapolation, and the trial-division baseline.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vqf/hamiltonian.hpp"

namespace vqf {

struct ResourceEstimate {
    std::uint64_t m = 0;
    int n = 0;
    int layers = 0;
    double epsilon = 0.0;
    double shots_per_gradient = 0.0;
    double gates_per_gradient = 0.0;
    std::uint64_t trial_division_bound = 0; // floor(sqrt(m)) - 1
};

// N_shots = (L+1) n Var(dE) / eps^2
double shots_per_gradient(const DiagonalHamiltonian& h, int layers, double epsilon);

// N_gates = (L+1)(2L+1) n^2 Var(dE) / eps^2
double gates_per_gradient(const DiagonalHamiltonian& h, int layers, double epsilon);

// eps = sqrt(Var(dE)) / 100; with this choice N_shots = (L+1) n 10^4.
double default_epsilon(const DiagonalHamiltonian& h);

ResourceEstimate make_estimate(std::uint64_t m, const DiagonalHamiltonian& h, int layers,
                               std::optional<double> epsilon = std::nullopt);

struct TrialDivisionResult {
    std::optional<std::uint64_t> factor; // absent for primes
    std::uint64_t divisions_used = 0;
};

// Trial divisors 2, 3, 4, ... up to sqrt(m); worst case floor(sqrt(m)) - 1
// divisions.
TrialDivisionResult trial_division(std::uint64_t m);

std::uint64_t trial_division_bound(std::uint64_t m);

struct QubitCounts {
    int no_preprocess_no_prior = 0;
    int no_preprocess_prior = 0;
    int preprocess_no_prior = 0;
    int preprocess_prior = 0;
};

// Variable counts of the four pipeline regimes. The no-preprocessing counts
// include p0/q0 (no odd-factor substitution). Throws NotBiprime when the
// prior regimes cannot determine true factors.
QubitCounts qubit_counts(std::uint64_t m);

// Least-squares line through (n_m, n) points evaluated at target_n_m.
double extrapolate_qubits(const std::vector<std::pair<double, double>>& points,
                          double target_n_m);

} // namespace vqf
