#include "vqf/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqf {

namespace {

// Reconstructs the factor integers from a fully determined assignment.
std::pair<std::uint64_t, std::uint64_t> resolved_factors(const ReducedSystem& reduced) {
    const auto assignment = apply_ledger(reduced, 0);
    const auto& inst = reduced.instance;
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

DiagonalHamiltonian quantize(const ReducedSystem& reduced) {
    if (reduced.qubit_count == 0) {
        auto [p, q] = resolved_factors(reduced);
        throw AlreadySolved(p, q);
    }
    if (reduced.qubit_count > 32)
        throw TooManyQubits("cannot quantize " + std::to_string(reduced.qubit_count) + " qubits");

    std::map<BitVar, int> index;
    for (std::size_t k = 0; k < reduced.variables.size(); ++k)
        index[reduced.variables[k]] = static_cast<int>(k);

    DiagonalHamiltonian h;
    h.n = reduced.qubit_count;

    for (const Clause& cl : reduced.clauses) {
        std::vector<std::pair<std::uint32_t, double>> terms;
        terms.reserve(cl.terms.size());
        for (const auto& [mono, coeff] : cl.terms) {
            std::uint32_t mask = 0;
            for (const BitVar& v : mono) mask |= std::uint32_t{1} << index.at(v);
            terms.emplace_back(mask, static_cast<double>(coeff));
        }
        for (const auto& [s, a] : terms)
            for (const auto& [t, b] : terms) {
                const double c = a * b;
                auto [it, inserted] = h.poly.emplace(s | t, c);
                if (!inserted) it->second += c;
            }
    }
    std::erase_if(h.poly, [](const auto& kv) { return kv.second == 0.0; });
    return h;
}

double energy(const DiagonalHamiltonian& h, std::uint64_t basis_state) {
    if (basis_state >> h.n)
        throw LengthMismatch("basis state does not fit in " + std::to_string(h.n) + " qubits");
    if (!h.cache_->table.empty()) return h.cache_->table[basis_state];
    double e = 0.0;
    const auto x = static_cast<std::uint32_t>(basis_state);
    for (const auto& [mask, coeff] : h.poly)
        if ((mask & x) == mask) e += coeff;
    return e;
}

const std::vector<double>& dense_table(const DiagonalHamiltonian& h, int cap) {
    if (h.n > cap)
        throw TooManyQubits("dense table for " + std::to_string(h.n) + " qubits exceeds cap " +
                            std::to_string(cap));
    std::call_once(h.cache_->once, [&] {
        const std::size_t size = std::size_t{1} << h.n;
        std::vector<double> table(size, 0.0);
        for (const auto& [mask, coeff] : h.poly) table[mask] += coeff;
        // subset-sum (zeta) transform: table[x] = sum over masks contained in x
        for (int k = 0; k < h.n; ++k) {
            const std::size_t bit = std::size_t{1} << k;
            for (std::size_t x = 0; x < size; ++x)
                if (x & bit) table[x] += table[x ^ bit];
        }
        h.cache_->table = std::move(table);
    });
    return h.cache_->table;
}

double trace(const DiagonalHamiltonian& h) {
    double t = 0.0;
    for (const auto& [mask, coeff] : h.poly)
        t += coeff * std::ldexp(1.0, h.n - std::popcount(mask));
    return t;
}

double trace_sq(const DiagonalHamiltonian& h) {
    // square the polynomial, then sum the diagonal analytically
    std::map<std::uint32_t, double> sq;
    for (const auto& [s, a] : h.poly)
        for (const auto& [t, b] : h.poly) sq[s | t] += a * b;
    double out = 0.0;
    for (const auto& [mask, coeff] : sq)
        out += coeff * std::ldexp(1.0, h.n - std::popcount(mask));
    return out;
}

double haar_mean(const DiagonalHamiltonian& h) { return std::ldexp(trace(h), -h.n); }

double haar_variance(const DiagonalHamiltonian& h) {
    const double tr = trace(h);
    const double tr2 = trace_sq(h);
    const double dim = std::ldexp(1.0, h.n);
    return (dim * tr2 - tr * tr) / (dim * dim * (dim + 1.0));
}

double grad_variance(const DiagonalHamiltonian& h) {
    return std::ldexp(trace_sq(h), -(3 * h.n - 2));
}

} // namespace vqf
