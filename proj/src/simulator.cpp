#include "vqf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vqf {

namespace {

constexpr double kPi = std::numbers::pi;

// pair iteration masks for a single-qubit gate on `target`
template <class Amp, class F>
void for_each_pair(std::vector<Amp>& amps, int target, F&& body) {
    const std::size_t mask = std::size_t{1} << target;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const std::size_t half = amps.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        body(amps[i0], amps[i0 | mask]);
    }
}

template <class Amp>
void apply_ry(std::vector<Amp>& amps, int target, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for_each_pair(amps, target, [&](Amp& a0, Amp& a1) {
        const Amp t0 = a0, t1 = a1;
        a0 = c * t0 - s * t1;
        a1 = s * t0 + c * t1;
    });
}

template <class Amp>
void apply_cx(std::vector<Amp>& amps, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t x = 0; x < amps.size(); ++x)
        if ((x & cmask) && !(x & tmask)) std::swap(amps[x], amps[x | tmask]);
}

void apply_t(std::vector<cplx>& amps, int target) {
    const cplx phase = std::polar(1.0, kPi / 4);
    const std::size_t mask = std::size_t{1} << target;
    for (std::size_t x = 0; x < amps.size(); ++x)
        if (x & mask) amps[x] *= phase;
}

// exp(-i theta X / 2)
void apply_rx(std::vector<cplx>& amps, int target, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const cplx is(0.0, -s);
    for_each_pair(amps, target, [&](cplx& a0, cplx& a1) {
        const cplx t0 = a0, t1 = a1;
        a0 = c * t0 + is * t1;
        a1 = is * t0 + c * t1;
    });
}

void apply_phase(std::vector<cplx>& amps, const std::vector<double>& table, double gamma) {
    for (std::size_t x = 0; x < amps.size(); ++x)
        amps[x] *= std::polar(1.0, -gamma * table[x]);
}

void check_params(const AnsatzCircuit& circuit, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != circuit.param_count)
        throw LengthMismatch("expected " + std::to_string(circuit.param_count) +
                             " parameters, got " + std::to_string(params.size()));
}

void append_ry_layer(AnsatzCircuit& circuit, int& slot) {
    for (int q = 0; q < circuit.n; ++q) circuit.gates.push_back({GateKind::Ry, q, -1, slot++});
}

} // namespace

AnsatzCircuit build_cx_ansatz(int n, int layers) {
    if (n < 1 || layers < 0 || (layers >= 1 && n < 2))
        throw BadShape("CX ansatz needs n >= 2 for L >= 1");
    AnsatzCircuit circuit;
    circuit.n = n;
    circuit.kind = AnsatzKind::CX;
    circuit.layers = layers;
    int slot = 0;
    append_ry_layer(circuit, slot);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n; ++q)
            circuit.gates.push_back({GateKind::Cx, q, (q + 1) % n, -1}); // cyclic staircase
        append_ry_layer(circuit, slot);
    }
    circuit.param_count = slot;
    return circuit;
}

AnsatzCircuit build_t_ansatz(int n, int layers) {
    if (n < 1 || layers < 0) throw BadShape("T ansatz needs n >= 1, L >= 0");
    AnsatzCircuit circuit;
    circuit.n = n;
    circuit.kind = AnsatzKind::T;
    circuit.layers = layers;
    int slot = 0;
    append_ry_layer(circuit, slot);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n; ++q) circuit.gates.push_back({GateKind::T, q, -1, -1});
        append_ry_layer(circuit, slot);
    }
    circuit.param_count = slot;
    return circuit;
}

AnsatzCircuit build_qaoa_ansatz(const DiagonalHamiltonian& h, int depth) {
    if (depth < 1) throw BadShape("QAOA depth must be >= 1");
    AnsatzCircuit circuit;
    circuit.n = h.n;
    circuit.kind = AnsatzKind::QAOA;
    circuit.layers = depth;
    circuit.phase_table = std::shared_ptr<const std::vector<double>>(
        h.cache_, &dense_table(h)); // aliasing share of the memoized table
    for (int j = 0; j < depth; ++j) {
        circuit.gates.push_back({GateKind::Phase, -1, -1, 2 * j});
        // e^{-i beta X} = R_x(2 beta)
        for (int q = 0; q < h.n; ++q) circuit.gates.push_back({GateKind::Rx, q, -1, 2 * j + 1, 2.0});
    }
    circuit.param_count = 2 * depth;
    return circuit;
}

StateVector run(const AnsatzCircuit& circuit, const std::vector<double>& params) {
    check_params(circuit, params);
    StateVector state;
    state.n = circuit.n;
    const std::size_t dim = std::size_t{1} << circuit.n;
    if (circuit.kind == AnsatzKind::QAOA) {
        state.amps.assign(dim, cplx(std::pow(dim, -0.5), 0.0));
    } else {
        state.amps.assign(dim, cplx(0.0, 0.0));
        state.amps[0] = 1.0;
    }
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
        case GateKind::Ry:
            apply_ry(state.amps, g.q0, g.param_scale * params[g.param_slot]);
            break;
        case GateKind::Cx:
            apply_cx(state.amps, g.q0, g.q1);
            break;
        case GateKind::T:
            apply_t(state.amps, g.q0);
            break;
        case GateKind::Rx:
            apply_rx(state.amps, g.q0, g.param_scale * params[g.param_slot]);
            break;
        case GateKind::Phase:
            apply_phase(state.amps, *circuit.phase_table, params[g.param_slot]);
            break;
        }
    }
    return state;
}

ProductState run_product(const AnsatzCircuit& circuit, const std::vector<double>& params) {
    if (circuit.kind != AnsatzKind::T) throw WrongKind("product simulation requires a T-circuit");
    check_params(circuit, params);
    ProductState state;
    state.n = circuit.n;
    state.wires.assign(circuit.n, {cplx(1.0, 0.0), cplx(0.0, 0.0)});
    const cplx t_phase = std::polar(1.0, kPi / 4);
    for (const Gate& g : circuit.gates) {
        auto& w = state.wires[g.q0];
        if (g.kind == GateKind::Ry) {
            const double theta = params[g.param_slot];
            const double c = std::cos(theta / 2), s = std::sin(theta / 2);
            const cplx t0 = w[0], t1 = w[1];
            w[0] = c * t0 - s * t1;
            w[1] = s * t0 + c * t1;
        } else {
            w[1] *= t_phase;
        }
    }
    return state;
}

StateVector expand(const ProductState& state) {
    StateVector out;
    out.n = state.n;
    out.amps.assign(std::size_t{1} << state.n, cplx(1.0, 0.0));
    for (std::size_t x = 0; x < out.amps.size(); ++x)
        for (int k = 0; k < state.n; ++k) out.amps[x] *= state.wires[k][(x >> k) & 1];
    return out;
}

double expectation(const StateVector& state, const DiagonalHamiltonian& h) {
    if (state.n != h.n) throw SizeMismatch("state and Hamiltonian qubit counts differ");
    const auto& table = dense_table(h);
    double e = 0.0;
    for (std::size_t x = 0; x < state.amps.size(); ++x) e += std::norm(state.amps[x]) * table[x];
    return e;
}

double expectation(const ProductState& state, const DiagonalHamiltonian& h) {
    if (state.n != h.n) throw SizeMismatch("state and Hamiltonian qubit counts differ");
    // product state: bits independent, so each monomial averages to the
    // product of its one-probabilities
    std::vector<double> p1(state.n);
    for (int k = 0; k < state.n; ++k) p1[k] = std::norm(state.wires[k][1]);
    double e = 0.0;
    for (const auto& [mask, coeff] : h.poly) {
        double term = coeff;
        for (int k = 0; k < state.n && term != 0.0; ++k)
            if (mask & (std::uint32_t{1} << k)) term *= p1[k];
        e += term;
    }
    return e;
}

std::vector<std::uint64_t> sample(const StateVector& state, std::size_t shot_count,
                                  std::uint64_t rng_seed) {
    std::vector<double> cdf(state.amps.size());
    double acc = 0.0;
    for (std::size_t x = 0; x < state.amps.size(); ++x) {
        acc += std::norm(state.amps[x]);
        cdf[x] = acc;
    }
    SplitMix64 rng(rng_seed);
    std::vector<std::uint64_t> shots(shot_count);
    for (std::size_t s = 0; s < shot_count; ++s) {
        const double u = rng.next_double() * acc;
        shots[s] = static_cast<std::uint64_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (shots[s] >= cdf.size()) shots[s] = cdf.size() - 1;
    }
    return shots;
}

std::vector<double> gradient(const AnsatzCircuit& circuit, const std::vector<double>& params,
                             const DiagonalHamiltonian& h) {
    check_params(circuit, params);
    if (circuit.kind == AnsatzKind::QAOA) return gradient_fd(circuit, params, h, 1e-6);

    const bool product = circuit.kind == AnsatzKind::T;
    std::vector<double> grad(params.size());
    std::vector<double> shifted = params;
    auto eval = [&]() {
        return product ? expectation(run_product(circuit, shifted), h)
                       : expectation(run(circuit, shifted), h);
    };
    for (std::size_t k = 0; k < params.size(); ++k) {
        shifted[k] = params[k] + kPi / 2;
        const double e_plus = eval();
        shifted[k] = params[k] - kPi / 2;
        const double e_minus = eval();
        shifted[k] = params[k];
        grad[k] = (e_plus - e_minus) / 2;
    }
    return grad;
}

std::vector<double> gradient_fd(const AnsatzCircuit& circuit, const std::vector<double>& params,
                                const DiagonalHamiltonian& h, double step) {
    check_params(circuit, params);
    std::vector<double> grad(params.size());
    std::vector<double> shifted = params;
    for (std::size_t k = 0; k < params.size(); ++k) {
        shifted[k] = params[k] + step;
        const double e_plus = expectation(run(circuit, shifted), h);
        shifted[k] = params[k] - step;
        const double e_minus = expectation(run(circuit, shifted), h);
        shifted[k] = params[k];
        grad[k] = (e_plus - e_minus) / (2 * step);
    }
    return grad;
}

namespace fast {

std::vector<double> run_real(const AnsatzCircuit& circuit, const std::vector<double>& params) {
    if (circuit.kind != AnsatzKind::CX) throw WrongKind("real fast path requires a CX-circuit");
    check_params(circuit, params);
    std::vector<double> amps(std::size_t{1} << circuit.n, 0.0);
    amps[0] = 1.0;
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::Ry)
            apply_ry(amps, g.q0, params[g.param_slot]);
        else
            apply_cx(amps, g.q0, g.q1);
    }
    return amps;
}

double expectation_real(const std::vector<double>& amps, const DiagonalHamiltonian& h) {
    const auto& table = dense_table(h);
    if (amps.size() != table.size()) throw SizeMismatch("state and Hamiltonian sizes differ");
    double e = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) e += amps[x] * amps[x] * table[x];
    return e;
}

std::vector<double> gradient_adjoint(const AnsatzCircuit& circuit,
                                     const std::vector<double>& params,
                                     const DiagonalHamiltonian& h) {
    if (circuit.kind != AnsatzKind::CX) throw WrongKind("adjoint path requires a CX-circuit");
    check_params(circuit, params);
    if (circuit.n != h.n) throw SizeMismatch("circuit and Hamiltonian qubit counts differ");

    std::vector<double> psi = run_real(circuit, params);
    const auto& table = dense_table(h);

    // lambda = (suffix)^T D psi, maintained while walking the gates backwards
    std::vector<double> lam(psi.size());
    for (std::size_t x = 0; x < psi.size(); ++x) lam[x] = table[x] * psi[x];

    std::vector<double> grad(params.size());
    std::vector<double> tmp;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        const Gate& g = *it;
        if (g.kind == GateKind::Cx) { // self-inverse and symmetric
            apply_cx(psi, g.q0, g.q1);
            apply_cx(lam, g.q0, g.q1);
            continue;
        }
        const double theta = params[g.param_slot];
        apply_ry(psi, g.q0, -theta); // psi is now the state before this gate
        // dRy/dtheta = Ry(theta + pi) / 2, so dE = lambda . Ry(theta+pi) psi
        tmp = psi;
        apply_ry(tmp, g.q0, theta + kPi);
        double dot = 0.0;
        for (std::size_t x = 0; x < tmp.size(); ++x) dot += lam[x] * tmp[x];
        grad[g.param_slot] = dot;
        apply_ry(lam, g.q0, -theta); // Ry^T = Ry(-theta)
    }
    return grad;
}

} // namespace fast

} // namespace vqf
