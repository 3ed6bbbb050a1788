#pragma once

// Exact dense statevector simulation of the three ansatz families, plus the
// product-state fast path for T-circuits. Basis index convention: bit k of
// the index is qubit k (qubit 0 = least significant bit).

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "vqf/hamiltonian.hpp"

namespace vqf {

using cplx = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<cplx> amps;
};

enum class GateKind : std::uint8_t { Ry, Cx, T, Rx, Phase };
enum class AnsatzKind : std::uint8_t { CX, T, QAOA };

struct Gate {
    GateKind kind{};
    int q0 = -1; // target (control for Cx)
    int q1 = -1; // Cx target
    int param_slot = -1;
    double param_scale = 1.0; // applied angle = scale * params[slot]
};

struct AnsatzCircuit {
    int n = 0;
    AnsatzKind kind = AnsatzKind::CX;
    int layers = 0; // L for CX/T, depth p for QAOA
    std::vector<Gate> gates;
    int param_count = 0;
    // diagonal energies for QAOA phase layers
    std::shared_ptr<const std::vector<double>> phase_table;
};

// One R_y layer, then L repetitions of {cyclic CX staircase, R_y layer}.
AnsatzCircuit build_cx_ansatz(int n, int layers);

// One R_y layer, then L repetitions of {T on every qubit, R_y layer}.
AnsatzCircuit build_t_ansatz(int n, int layers);

// |+>^n, then per layer e^{-i gamma_j H} followed by e^{-i beta_j X} on every
// qubit. Parameters ordered (gamma_1, beta_1, ..., gamma_p, beta_p).
AnsatzCircuit build_qaoa_ansatz(const DiagonalHamiltonian& h, int depth);

StateVector run(const AnsatzCircuit& circuit, const std::vector<double>& params);

// n independent wires; expansion matches the full simulation of a T-circuit.
struct ProductState {
    int n = 0;
    std::vector<std::array<cplx, 2>> wires;
};

ProductState run_product(const AnsatzCircuit& t_circuit, const std::vector<double>& params);
StateVector expand(const ProductState& state);

double expectation(const StateVector& state, const DiagonalHamiltonian& h);
double expectation(const ProductState& state, const DiagonalHamiltonian& h);

// i.i.d. basis-state draws from |psi_x|^2; deterministic given the seed.
std::vector<std::uint64_t> sample(const StateVector& state, std::size_t shot_count,
                                  std::uint64_t rng_seed);

// Gradient of E(theta) = <psi(theta)|H|psi(theta)>. CX/T circuits use the
// parameter shift rule (every parametrized gate is an R_y); QAOA uses central
// finite differences with step h = 1e-6.
std::vector<double> gradient(const AnsatzCircuit& circuit, const std::vector<double>& params,
                             const DiagonalHamiltonian& h);

// Central finite-difference gradient; oracle for tests and the QAOA path.
std::vector<double> gradient_fd(const AnsatzCircuit& circuit, const std::vector<double>& params,
                                const DiagonalHamiltonian& h, double step);

// Fast paths used by the optimizer loop. CX-ansatz states are real, so the
// forward pass runs on real amplitudes and the gradient is accumulated in one
// reverse sweep; values agree with the parameter shift rule to rounding.
namespace fast {
std::vector<double> run_real(const AnsatzCircuit& cx_circuit, const std::vector<double>& params);
double expectation_real(const std::vector<double>& amps, const DiagonalHamiltonian& h);
std::vector<double> gradient_adjoint(const AnsatzCircuit& cx_circuit,
                                     const std::vector<double>& params,
                                     const DiagonalHamiltonian& h);
} // namespace fast

} // namespace vqf
