#pragma once

// Binary multiplication clause system for integer factoring: one clause per
// output column of the long multiplication p * q = m, over factor bits p_i,
// q_i and carry bits z_{i,j}.

#include <cstdint>
#include <functional>
#include <type_traits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqf/common.hpp"

namespace vqf {

enum class VarFamily : std::uint8_t { P = 0, Q = 1, Z = 2 };

// A binary unknown: factor bit p_i / q_i, or carry z_{i,j} from column i into
// column j (i < j). Ordering is (family, i, j), giving the canonical variable
// order P ascending, Q ascending, Z lexicographic.
struct BitVar {
    VarFamily family = VarFamily::P;
    std::int32_t i = 0;
    std::int32_t j = -1; // carry target column; -1 for P/Q

    auto operator<=>(const BitVar&) const = default;

    static BitVar p(std::int32_t i) { return {VarFamily::P, i, -1}; }
    static BitVar q(std::int32_t i) { return {VarFamily::Q, i, -1}; }
    static BitVar z(std::int32_t i, std::int32_t j) { return {VarFamily::Z, i, j}; }

    std::string name() const;
};

// Product of distinct BitVars, kept sorted. Size 0 (constant term), 1 or 2.
using Monomial = std::vector<BitVar>;

// Multilinear integer polynomial required to equal zero. The empty monomial
// holds the constant term.
struct Clause {
    int column = 0;
    std::map<Monomial, std::int64_t> terms;

    std::int64_t constant() const {
        auto it = terms.find(Monomial{});
        return it == terms.end() ? 0 : it->second;
    }

    // number of non-constant terms
    std::size_t term_count() const {
        return terms.size() - terms.count(Monomial{});
    }

    bool operator==(const Clause&) const = default;
};

// Adds coeff * mono, merging with an existing term and dropping zeros.
void clause_add_term(Clause& clause, Monomial mono, std::int64_t coeff);

// Evaluates the clause under a 0/1 assignment given as a lookup callback.
template <class Lookup>
    requires std::is_invocable_r_v<int, Lookup, const BitVar&>
std::int64_t evaluate_clause(const Clause& clause, Lookup&& value_of) {
    std::int64_t total = 0;
    for (const auto& [mono, coeff] : clause.terms) {
        std::int64_t prod = coeff;
        for (const BitVar& v : mono) {
            if (value_of(v) == 0) {
                prod = 0;
                break;
            }
        }
        total += prod;
    }
    return total;
}

std::int64_t evaluate_clause(const Clause& clause, const std::map<BitVar, int>& assignment);

struct Bounds {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// Tight termwise range of the clause over all 0/1 assignments: each monomial
// contributes [min(0, c), max(0, c)], the constant contributes to both ends.
Bounds clause_bounds(const Clause& clause);

struct FactoringInstance {
    std::uint64_t m = 0;
    int n_m = 0; // bit length of m
    int n_p = 0; // bit length allotted to the larger factor
    int n_q = 0; // bit length allotted to the smaller factor
    bool prior_knowledge = false;
    bool preprocessed = false; // odd-factor substitution p0 = q0 = 1 applied at encoding
};

struct ClauseSystem {
    FactoringInstance instance;
    std::vector<BitVar> variables; // P asc, Q asc, Z lex
    std::vector<Clause> clauses;   // one per column, ascending
};

// Validates m and fixes the factor bit lengths. Without a prior the convention
// is n_p = n_m - 1 and n_q = ceil(n_m / 2); a prior pair is normalized so that
// n_p >= n_q. `preprocess` controls whether encoding substitutes p0 = q0 = 1.
FactoringInstance build_instance(std::uint64_t m,
                                 std::optional<std::pair<int, int>> prior = std::nullopt,
                                 bool preprocess = true);

// Builds the column clauses. Column i carries the products sum_j q_j p_{i-j},
// the incoming carries, -m_i, and outgoing carries -2^j z_{i,i+j}. The carry
// width of column i is floor(log2(S_i)) where S_i is the max attainable value
// of products plus incoming carries, truncated at the last column.
ClauseSystem build_clauses(const FactoringInstance& instance);

} // namespace vqf
