#pragma once

// Polynomial-time simplification of a clause system. Repeatedly applies a
// fixed, deterministic rule set to the clauses (ascending column order, rules
// in priority order) until no rule fires, recording every variable
// elimination in an AssignmentLedger so reduced assignments can be mapped
// back to full bit assignments.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "vqf/encoding.hpp"

namespace vqf {

// Integer affine expression a + sum_v c_v * v over binary variables.
struct AffineExpr {
    std::int64_t constant = 0;
    std::map<BitVar, std::int64_t> coeffs;

    bool is_constant() const { return coeffs.empty(); }

    static AffineExpr of(std::int64_t c) { return AffineExpr{c, {}}; }
    static AffineExpr var(const BitVar& v) { return AffineExpr{0, {{v, 1}}}; }

    bool operator==(const AffineExpr&) const = default;
};

// Record of every elimination performed by simplify().
//   fixed:          variables pinned to a constant bit.
//   substitutions:  eliminated variables expressed over surviving variables,
//                   in the order the eliminations fired. Expressions are kept
//                   rewritten so they only ever reference surviving variables.
//   product_zeros:  pairs {x, y} with x*y = 0 whose constraint is still live
//                   over the surviving variables.
struct AssignmentLedger {
    std::map<BitVar, int> fixed;
    std::vector<std::pair<BitVar, AffineExpr>> substitutions;
    std::set<std::pair<BitVar, BitVar>> product_zeros;
};

struct ReducedSystem {
    FactoringInstance instance;
    std::vector<BitVar> variables; // surviving, canonical order
    // Simplified column clauses followed by residual product constraints
    // (column == -1). Constant-zero clauses are removed.
    std::vector<Clause> clauses;
    AssignmentLedger ledger;
    int qubit_count = 0;
};

// Runs the rule set to fixpoint. Throws Infeasible if a clause is proved
// unsatisfiable (wrong prior bit lengths, or m not an odd biprime under the
// encoding conventions).
ReducedSystem simplify(const ClauseSystem& system);

// Wraps a clause system as a ReducedSystem without applying any rules
// (identity ledger, apart from the odd-factor bits fixed at encoding).
ReducedSystem as_reduced(const ClauseSystem& system);

// Resolves a reduced assignment (bit k of `bits` is the value of
// surviving[k]) into a full assignment of every original variable. Throws
// NonBinarySubstitution if a substitution expression evaluates outside {0,1}.
std::map<BitVar, int> apply_ledger(const AssignmentLedger& ledger,
                                   const std::vector<BitVar>& surviving, std::uint64_t bits);

std::map<BitVar, int> apply_ledger(const ReducedSystem& reduced, std::uint64_t bits);

} // namespace vqf
