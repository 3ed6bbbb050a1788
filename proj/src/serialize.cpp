#include "vqf/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace vqf {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered clause_to_json(const Clause& clause) {
    ordered terms = ordered::array();
    for (const auto& [mono, coeff] : clause.terms) {
        ordered names = ordered::array();
        for (const BitVar& v : mono) names.push_back(v.name());
        terms.push_back(ordered::array({names, coeff}));
    }
    return ordered{{"column", clause.column}, {"terms", terms}};
}

ordered system_body(const FactoringInstance& inst, const std::vector<BitVar>& variables,
                    const std::vector<Clause>& clauses) {
    ordered doc;
    doc["m"] = inst.m;
    doc["n_p"] = inst.n_p;
    doc["n_q"] = inst.n_q;
    ordered vars = ordered::array();
    for (const BitVar& v : variables) vars.push_back(v.name());
    doc["variables"] = vars;
    ordered cls = ordered::array();
    for (const Clause& c : clauses) cls.push_back(clause_to_json(c));
    doc["clauses"] = cls;
    return doc;
}

ordered affine_to_json(const AffineExpr& e) {
    ordered terms = ordered::array();
    for (const auto& [v, c] : e.coeffs) terms.push_back(ordered::array({v.name(), c}));
    return ordered{{"constant", e.constant}, {"terms", terms}};
}

} // namespace

std::string to_json(const ClauseSystem& system) {
    return system_body(system.instance, system.variables, system.clauses).dump(2);
}

std::string to_json(const ReducedSystem& reduced) {
    ordered doc = system_body(reduced.instance, reduced.variables, reduced.clauses);
    doc["qubit_count"] = reduced.qubit_count;
    ordered ledger;
    ordered fixed = ordered::array();
    for (const auto& [v, b] : reduced.ledger.fixed) fixed.push_back(ordered::array({v.name(), b}));
    ledger["fixed"] = fixed;
    ordered subs = ordered::array();
    for (const auto& [v, e] : reduced.ledger.substitutions)
        subs.push_back(ordered::array({v.name(), affine_to_json(e)}));
    ledger["substitutions"] = subs;
    ordered pairs = ordered::array();
    for (const auto& [x, y] : reduced.ledger.product_zeros)
        pairs.push_back(ordered::array({x.name(), y.name()}));
    ledger["product_zeros"] = pairs;
    doc["ledger"] = ledger;
    return doc.dump(2);
}

std::string to_json(const DiagonalHamiltonian& h) {
    ordered doc;
    doc["n"] = h.n;
    ordered terms = ordered::array();
    for (const auto& [mask, coeff] : h.poly) {
        ordered qubits = ordered::array();
        for (int k = 0; k < h.n; ++k)
            if (mask & (std::uint32_t{1} << k)) qubits.push_back(k);
        terms.push_back(ordered::array({qubits, coeff}));
    }
    doc["terms"] = terms;
    return doc.dump(2);
}

std::string to_json(const AnsatzCircuit& circuit) {
    ordered gates = ordered::array();
    for (const Gate& g : circuit.gates) {
        ordered entry;
        ordered qubits = ordered::array();
        switch (g.kind) {
        case GateKind::Ry:
            entry["gate"] = "ry";
            qubits.push_back(g.q0);
            break;
        case GateKind::Cx:
            entry["gate"] = "cx";
            qubits.push_back(g.q0);
            qubits.push_back(g.q1);
            break;
        case GateKind::T:
            entry["gate"] = "t";
            qubits.push_back(g.q0);
            break;
        case GateKind::Rx:
            entry["gate"] = "rx";
            qubits.push_back(g.q0);
            break;
        case GateKind::Phase:
            entry["gate"] = "phase";
            break;
        }
        entry["qubits"] = qubits;
        if (g.param_slot >= 0)
            entry["param_slot"] = g.param_slot;
        else
            entry["param_slot"] = nullptr;
        gates.push_back(entry);
    }
    return gates.dump(2);
}

void write_dense_table(const DiagonalHamiltonian& h, const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "binary export assumes a little-endian host");
    const auto& table = dense_table(h);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    const std::uint64_t count = table.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(table.size() * sizeof(double)));
}

} // namespace vqf
