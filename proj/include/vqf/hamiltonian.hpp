#pragma once

// Diagonal Hamiltonian H = sum_i C_i^2 over the reduced qubit variables.
// Canonical representation is the multilinear bit polynomial: a map from
// qubit-index subsets (as bitmasks) to real coefficients; H(x) is the sum of
// coefficients whose mask is contained in x.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "vqf/preprocess.hpp"

namespace vqf {

inline constexpr int kDenseTableCap = 26;

struct DiagonalHamiltonian {
    int n = 0;
    std::map<std::uint32_t, double> poly; // subset mask (popcount <= 4) -> coefficient

    DiagonalHamiltonian() : cache_(std::make_shared<DenseCache>()) {}

    struct DenseCache {
        std::once_flag once;
        std::vector<double> table;
    };
    // shared across copies; filled once (compute-then-publish)
    std::shared_ptr<DenseCache> cache_;
};

// Squares every reduced clause (including residual product constraints) and
// accumulates the multilinear expansion. Throws AlreadySolved with the
// factors when preprocessing eliminated every variable.
DiagonalHamiltonian quantize(const ReducedSystem& reduced);

// Energy of a computational basis state. Uses the dense table when it has
// been materialized, otherwise evaluates the polynomial.
double energy(const DiagonalHamiltonian& h, std::uint64_t basis_state);

// Materializes (and memoizes) all 2^n energies. basis index bit k = qubit k.
const std::vector<double>& dense_table(const DiagonalHamiltonian& h, int cap = kDenseTableCap);

// tr H and tr H^2, computed exactly from the polynomial.
double trace(const DiagonalHamiltonian& h);
double trace_sq(const DiagonalHamiltonian& h);

// Mean of <psi|H|psi> over Haar-random states: tr H / 2^n.
double haar_mean(const DiagonalHamiltonian& h);

// Variance of <psi|H|psi> over Haar-random states:
// (2^n tr H^2 - (tr H)^2) / (2^{2n} (2^n + 1)).
double haar_variance(const DiagonalHamiltonian& h);

// Variance of one gradient component under Pauli-generated ansatz gates:
// tr H^2 / 2^{3n-2}. Not meaningful for constant H (the true gradient is 0).
double grad_variance(const DiagonalHamiltonian& h);

} // namespace vqf
