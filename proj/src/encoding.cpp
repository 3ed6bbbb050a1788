#include "vqf/encoding.hpp"

#include <algorithm>
#include <bit>

namespace vqf {

std::string BitVar::name() const {
    switch (family) {
    case VarFamily::P:
        return "p" + std::to_string(i);
    case VarFamily::Q:
        return "q" + std::to_string(i);
    case VarFamily::Z:
        return "z" + std::to_string(i) + "_" + std::to_string(j);
    }
    return "?";
}

void clause_add_term(Clause& clause, Monomial mono, std::int64_t coeff) {
    if (coeff == 0) return;
    std::sort(mono.begin(), mono.end());
    auto [it, inserted] = clause.terms.emplace(std::move(mono), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) clause.terms.erase(it);
    }
}

std::int64_t evaluate_clause(const Clause& clause, const std::map<BitVar, int>& assignment) {
    return evaluate_clause(clause, [&](const BitVar& v) { return assignment.at(v); });
}

Bounds clause_bounds(const Clause& clause) {
    Bounds b;
    for (const auto& [mono, coeff] : clause.terms) {
        if (mono.empty()) {
            b.lo += coeff;
            b.hi += coeff;
        } else {
            b.lo += std::min<std::int64_t>(0, coeff);
            b.hi += std::max<std::int64_t>(0, coeff);
        }
    }
    return b;
}

FactoringInstance build_instance(std::uint64_t m, std::optional<std::pair<int, int>> prior,
                                 bool preprocess) {
    if (m % 2 == 0) throw EvenInput("m must be odd (strip factors of 2 first): " + std::to_string(m));
    if (m < 9) throw TooSmall("m must be >= 9: " + std::to_string(m));

    FactoringInstance inst;
    inst.m = m;
    inst.n_m = std::bit_width(m);
    inst.preprocessed = preprocess;

    if (prior) {
        auto [a, b] = *prior;
        if (a < b) std::swap(a, b); // multiplication commutes; keep n_p >= n_q
        if (b < 2) throw InvalidPrior("factor bit lengths must be >= 2");
        if (a > inst.n_m) throw InvalidPrior("n_p exceeds the bit length of m");
        const std::uint64_t p_max = (std::uint64_t{1} << a) - 1;
        const std::uint64_t q_max = (std::uint64_t{1} << b) - 1;
        if (p_max * q_max < m)
            throw InvalidPrior("bit lengths (" + std::to_string(a) + ", " + std::to_string(b) +
                               ") cannot represent a factorization of " + std::to_string(m));
        inst.n_p = a;
        inst.n_q = b;
        inst.prior_knowledge = true;
    } else {
        // WLOG q <= sqrt(m) fits in ceil(n_m / 2) bits and p < m fits in n_m - 1.
        inst.n_p = inst.n_m - 1;
        inst.n_q = (inst.n_m + 1) / 2;
        inst.prior_knowledge = false;
    }
    return inst;
}

namespace {

int floor_log2(std::int64_t v) {
    return v >= 1 ? std::bit_width(static_cast<std::uint64_t>(v)) - 1 : 0;
}

} // namespace

ClauseSystem build_clauses(const FactoringInstance& inst) {
    const int columns = inst.n_p + inst.n_q;
    const bool odd_sub = inst.preprocessed; // m odd, so p0 = q0 = 1

    ClauseSystem sys;
    sys.instance = inst;

    std::vector<std::vector<BitVar>> incoming(columns);
    std::vector<BitVar> carry_vars;

    for (int i = 0; i < columns; ++i) {
        Clause cl;
        cl.column = i;

        const int j_lo = std::max(0, i - (inst.n_p - 1));
        const int j_hi = std::min(i, inst.n_q - 1);
        for (int j = j_lo; j <= j_hi; ++j) {
            Monomial mono;
            if (!(odd_sub && j == 0)) mono.push_back(BitVar::q(j));
            if (!(odd_sub && i - j == 0)) mono.push_back(BitVar::p(i - j));
            clause_add_term(cl, std::move(mono), 1);
        }
        for (const BitVar& z : incoming[i]) clause_add_term(cl, {z}, 1);

        // carry capacity from the max attainable column sum, before -m_i
        const std::int64_t sum_max = clause_bounds(cl).hi;

        const std::int64_t m_i = (i < 64) ? ((inst.m >> i) & 1) : 0;
        clause_add_term(cl, {}, -m_i);

        const int k_i = floor_log2(sum_max);
        for (int j = 1; j <= k_i && i + j < columns; ++j) {
            BitVar z = BitVar::z(i, i + j);
            clause_add_term(cl, {z}, -(std::int64_t{1} << j));
            incoming[i + j].push_back(z);
            carry_vars.push_back(z);
        }

        sys.clauses.push_back(std::move(cl));
    }

    for (int i = odd_sub ? 1 : 0; i < inst.n_p; ++i) sys.variables.push_back(BitVar::p(i));
    for (int i = odd_sub ? 1 : 0; i < inst.n_q; ++i) sys.variables.push_back(BitVar::q(i));
    std::sort(carry_vars.begin(), carry_vars.end());
    sys.variables.insert(sys.variables.end(), carry_vars.begin(), carry_vars.end());

    return sys;
}

} // namespace vqf
