#include "vqf/preprocess.hpp"

#include <algorithm>
#include <deque>

namespace vqf {

namespace {

// Rule availability. R1-R6 follow the written rule set; the coefficient
// equality rule (a*x - a*y = 0 => x := y) and the mod-2 parity deductions are
// the standard extensions needed to reach the reported qubit counts.
// Calibrated against m = 25, 49, 91, 247; frozen.
struct RuleSet {
    bool unit = true;        // R1
    bool product_one = true; // R2
    bool nonneg_sum = true;  // R3
    bool sum_to_one = true;  // R4
    bool carry_kill = true;  // R5
    bool equality = true;    // E: a*x - a*y = 0  =>  x := y
    bool parity = true;      // P: mod-2 deductions (fix / equality / pair)
    bool parity_negation = false; // P variant: x + y = odd  =>  x := 1 - y
};

Clause substitute_clause(const Clause& in, const BitVar& v, const AffineExpr& e) {
    Clause out;
    out.column = in.column;
    for (const auto& [mono, coeff] : in.terms) {
        auto pos = std::find(mono.begin(), mono.end(), v);
        if (pos == mono.end()) {
            clause_add_term(out, mono, coeff);
            continue;
        }
        Monomial rest;
        for (const BitVar& w : mono)
            if (!(w == v)) rest.push_back(w);
        clause_add_term(out, rest, coeff * e.constant);
        for (const auto& [u, cu] : e.coeffs) {
            Monomial m2 = rest;
            if (std::find(m2.begin(), m2.end(), u) == m2.end()) m2.push_back(u); // x^2 -> x
            clause_add_term(out, std::move(m2), coeff * cu);
        }
    }
    return out;
}

AffineExpr substitute_expr(const AffineExpr& in, const BitVar& v, const AffineExpr& e) {
    auto it = in.coeffs.find(v);
    if (it == in.coeffs.end()) return in;
    AffineExpr out = in;
    const std::int64_t c = it->second;
    out.coeffs.erase(v);
    out.constant += c * e.constant;
    for (const auto& [u, cu] : e.coeffs) {
        out.coeffs[u] += c * cu;
        if (out.coeffs[u] == 0) out.coeffs.erase(u);
    }
    return out;
}

// Multilinear product e * other as a clause polynomial.
Clause pair_constraint_clause(const AffineExpr& e, const BitVar& other) {
    Clause cl;
    cl.column = -1;
    clause_add_term(cl, {other}, e.constant);
    for (const auto& [u, cu] : e.coeffs) {
        Monomial mono{other};
        if (!(u == other)) mono.push_back(u);
        clause_add_term(cl, std::move(mono), cu);
    }
    return cl;
}

struct Engine {
    FactoringInstance instance;
    std::vector<BitVar> var_order;
    std::vector<Clause> clauses;
    AssignmentLedger ledger;
    std::set<BitVar> eliminated;
    RuleSet rules;
    std::deque<std::pair<BitVar, AffineExpr>> queue;

    void enqueue_fix(const BitVar& v, int b) { queue.emplace_back(v, AffineExpr::of(b)); }
    void enqueue_subst(const BitVar& v, AffineExpr e) { queue.emplace_back(v, std::move(e)); }

    void drain() {
        while (!queue.empty()) {
            auto [v, e] = queue.front();
            queue.pop_front();
            apply_elimination(v, e);
        }
    }

    void apply_elimination(const BitVar& v, const AffineExpr& e) {
        if (eliminated.contains(v)) {
            reconcile(v, e);
            return;
        }
        eliminated.insert(v);
        if (e.is_constant()) {
            if (e.constant != 0 && e.constant != 1)
                throw Infeasible("variable " + v.name() + " forced outside {0,1}");
            ledger.fixed[v] = static_cast<int>(e.constant);
        } else {
            ledger.substitutions.emplace_back(v, e);
        }

        for (Clause& cl : clauses) cl = substitute_clause(cl, v, e);
        sweep_trivial();

        // keep earlier substitution expressions over surviving variables only
        for (auto& [w, expr] : ledger.substitutions) {
            if (w == v) continue;
            expr = substitute_expr(expr, v, e);
            if (expr.is_constant() && expr.constant != 0 && expr.constant != 1)
                throw Infeasible("substitution for " + w.name() + " forced outside {0,1}");
        }

        update_pairs(v, e);
    }

    // A second derivation for an already-eliminated variable must agree.
    void reconcile(const BitVar& v, const AffineExpr& e) {
        AffineExpr current;
        if (auto it = ledger.fixed.find(v); it != ledger.fixed.end()) {
            current = AffineExpr::of(it->second);
        } else {
            for (const auto& [w, expr] : ledger.substitutions)
                if (w == v) current = expr;
        }
        AffineExpr diff = current;
        diff.constant -= e.constant;
        for (const auto& [u, cu] : e.coeffs) {
            diff.coeffs[u] -= cu;
            if (diff.coeffs[u] == 0) diff.coeffs.erase(u);
        }
        if (diff.is_constant()) {
            if (diff.constant != 0) throw Infeasible("conflicting derivations for " + v.name());
            return;
        }
        Clause cl;
        cl.column = -1;
        clause_add_term(cl, {}, diff.constant);
        for (const auto& [u, cu] : diff.coeffs) clause_add_term(cl, {u}, cu);
        clauses.push_back(std::move(cl));
    }

    void update_pairs(const BitVar& v, const AffineExpr& e) {
        std::vector<std::pair<BitVar, BitVar>> touched;
        for (const auto& pr : ledger.product_zeros)
            if (pr.first == v || pr.second == v) touched.push_back(pr);
        for (const auto& pr : touched) {
            ledger.product_zeros.erase(pr);
            const BitVar other = (pr.first == v) ? pr.second : pr.first;
            if (e.is_constant()) {
                if (e.constant == 1) enqueue_fix(other, 0);
                // e.constant == 0: constraint satisfied
            } else {
                Clause cl = pair_constraint_clause(e, other);
                if (!cl.terms.empty()) clauses.push_back(std::move(cl));
            }
        }
    }

    void record_pair(BitVar x, BitVar y) {
        if (y < x) std::swap(x, y);
        ledger.product_zeros.emplace(x, y);
    }

    // Removes clauses that reduced to the constant 0; a nonzero constant is a
    // contradiction.
    void sweep_trivial() {
        for (const Clause& cl : clauses) {
            if (cl.term_count() == 0 && cl.constant() != 0)
                throw Infeasible("column " + std::to_string(cl.column) +
                                 " reduced to nonzero constant");
        }
        std::erase_if(clauses, [](const Clause& cl) { return cl.term_count() == 0; });
    }

    bool try_rules(std::size_t idx) {
        Clause& cl = clauses[idx];

        // R6: bounds exclude zero
        const Bounds b = clause_bounds(cl);
        if (b.lo > 0 || b.hi < 0)
            throw Infeasible("column " + std::to_string(cl.column) + " cannot reach zero");

        const std::int64_t k = cl.constant();

        // R1: single variable term
        if (rules.unit && cl.term_count() == 1) {
            auto it = cl.terms.begin();
            if (it->first.empty()) ++it;
            if (it->first.size() == 1) {
                const BitVar v = it->first[0];
                const std::int64_t c = it->second;
                if (k == 0)
                    enqueue_fix(v, 0);
                else if (c + k == 0)
                    enqueue_fix(v, 1);
                else
                    throw Infeasible("no binary value satisfies " + v.name());
                return true;
            }
        }

        // R2: single product term with nonzero constant
        if (rules.product_one && cl.term_count() == 1) {
            auto it = cl.terms.begin();
            if (it->first.empty()) ++it;
            if (it->first.size() == 2 && k != 0) {
                if (it->second + k == 0) {
                    enqueue_fix(it->first[0], 1);
                    enqueue_fix(it->first[1], 1);
                    return true;
                }
                throw Infeasible("product clause in column " + std::to_string(cl.column) +
                                 " has no binary solution");
            }
        }

        // R3: zero constant and uniformly signed coefficients force every
        // monomial to zero
        if (rules.nonneg_sum && k == 0 && cl.term_count() >= 1) {
            bool all_pos = true, all_neg = true;
            for (const auto& [mono, c] : cl.terms) {
                if (mono.empty()) continue;
                (c > 0 ? all_neg : all_pos) = false;
            }
            if (all_pos || all_neg) {
                Clause fired = cl;
                clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(idx));
                for (const auto& [mono, c] : fired.terms) {
                    if (mono.size() == 1)
                        enqueue_fix(mono[0], 0);
                    else if (mono.size() == 2)
                        record_pair(mono[0], mono[1]);
                }
                return true;
            }
        }

        // R4: x + y - 1 = 0
        if (rules.sum_to_one && k == -1 && cl.term_count() == 2) {
            auto it = cl.terms.begin();
            std::vector<std::pair<BitVar, std::int64_t>> singles;
            for (const auto& [mono, c] : cl.terms)
                if (mono.size() == 1) singles.emplace_back(mono[0], c);
            if (singles.size() == 2 && singles[0].second == 1 && singles[1].second == 1) {
                const BitVar x = singles[0].first, y = singles[1].first;
                record_pair(x, y);
                AffineExpr e = AffineExpr::of(1);
                e.coeffs[y] = -1;
                enqueue_subst(x, std::move(e));
                return true;
            }
            (void)it;
        }

        // R5: a negative single-variable term the rest of the clause cannot
        // balance (carry kill)
        if (rules.carry_kill) {
            for (const auto& [mono, c] : cl.terms) {
                if (mono.size() != 1 || c >= 0) continue;
                if (b.hi < -c) { // c contributes nothing to b.hi
                    enqueue_fix(mono[0], 0);
                    return true;
                }
            }
        }

        // E: a*x - a*y = 0
        if (rules.equality && k == 0 && cl.term_count() == 2) {
            std::vector<std::pair<BitVar, std::int64_t>> singles;
            for (const auto& [mono, c] : cl.terms)
                if (mono.size() == 1) singles.emplace_back(mono[0], c);
            if (singles.size() == 2 && singles[0].second == -singles[1].second) {
                enqueue_subst(singles[0].first, AffineExpr::var(singles[1].first));
                return true;
            }
        }

        // P: reduce the clause mod 2
        if (rules.parity) {
            std::vector<Monomial> odd;
            for (const auto& [mono, c] : cl.terms)
                if (!mono.empty() && (c & 1)) odd.push_back(mono);
            const bool k_odd = (k & 1) != 0;

            if (odd.empty() && k_odd)
                throw Infeasible("column " + std::to_string(cl.column) + " violates parity");

            if (odd.size() == 1) {
                const Monomial& mono = odd[0];
                if (mono.size() == 1) {
                    enqueue_fix(mono[0], k_odd ? 1 : 0);
                    return true;
                }
                if (k_odd) {
                    enqueue_fix(mono[0], 1);
                    enqueue_fix(mono[1], 1);
                    return true;
                }
                record_pair(mono[0], mono[1]);
                cl.terms.erase(mono);
                return true;
            }

            if (odd.size() == 2 && odd[0].size() == 1 && odd[1].size() == 1) {
                if (!k_odd) {
                    enqueue_subst(odd[0][0], AffineExpr::var(odd[1][0]));
                    return true;
                }
                if (rules.parity_negation) {
                    const BitVar x = odd[0][0], y = odd[1][0];
                    record_pair(x, y);
                    AffineExpr e = AffineExpr::of(1);
                    e.coeffs[y] = -1;
                    enqueue_subst(x, std::move(e));
                    return true;
                }
            }
        }

        return false;
    }

    ReducedSystem run() {
        if (instance.preprocessed) {
            ledger.fixed[BitVar::p(0)] = 1;
            ledger.fixed[BitVar::q(0)] = 1;
        }
        sweep_trivial();
        bool fired = true;
        while (fired) {
            fired = false;
            for (std::size_t idx = 0; idx < clauses.size(); ++idx) {
                if (try_rules(idx)) {
                    fired = true;
                    drain();
                    sweep_trivial();
                    break;
                }
            }
        }
        return assemble();
    }

    ReducedSystem assemble() {
        ReducedSystem red;
        red.instance = instance;
        for (const BitVar& v : var_order)
            if (!eliminated.contains(v)) red.variables.push_back(v);
        red.clauses = clauses;
        for (const auto& [x, y] : ledger.product_zeros) {
            Clause cl;
            cl.column = -1;
            clause_add_term(cl, {x, y}, 1);
            red.clauses.push_back(std::move(cl));
        }
        red.ledger = ledger;
        red.qubit_count = static_cast<int>(red.variables.size());
        return red;
    }
};

} // namespace

ReducedSystem simplify(const ClauseSystem& system) {
    Engine eng;
    eng.instance = system.instance;
    eng.var_order = system.variables;
    eng.clauses = system.clauses;
    return eng.run();
}

ReducedSystem as_reduced(const ClauseSystem& system) {
    ReducedSystem red;
    red.instance = system.instance;
    red.variables = system.variables;
    red.clauses = system.clauses;
    if (system.instance.preprocessed) {
        red.ledger.fixed[BitVar::p(0)] = 1;
        red.ledger.fixed[BitVar::q(0)] = 1;
    }
    red.qubit_count = static_cast<int>(red.variables.size());
    return red;
}

std::map<BitVar, int> apply_ledger(const AssignmentLedger& ledger,
                                   const std::vector<BitVar>& surviving, std::uint64_t bits) {
    std::map<BitVar, int> out;
    for (std::size_t k = 0; k < surviving.size(); ++k)
        out[surviving[k]] = static_cast<int>((bits >> k) & 1);
    for (const auto& [v, b] : ledger.fixed) out[v] = b;
    for (const auto& [v, e] : ledger.substitutions) {
        std::int64_t val = e.constant;
        for (const auto& [u, cu] : e.coeffs) val += cu * out.at(u);
        if (val != 0 && val != 1)
            throw NonBinarySubstitution("substitution for " + v.name() + " evaluated to " +
                                        std::to_string(val));
        out[v] = static_cast<int>(val);
    }
    return out;
}

std::map<BitVar, int> apply_ledger(const ReducedSystem& reduced, std::uint64_t bits) {
    return apply_ledger(reduced.ledger, reduced.variables, bits);
}

} // namespace vqf
