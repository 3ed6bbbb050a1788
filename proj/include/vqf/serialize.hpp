#pragma once

// JSON and binary export of the domain objects. All emitters are
// deterministic: identical inputs produce identical bytes.

#include <string>

#include "vqf/analysis.hpp"
#include "vqf/preprocess.hpp"
#include "vqf/simulator.hpp"

namespace vqf {

// {"m", "n_p", "n_q", "variables": [...], "clauses": [{"column", "terms":
// [[["p1","q1"], -2], ...]}]}
std::string to_json(const ClauseSystem& system);

// same schema plus a "ledger" section
std::string to_json(const ReducedSystem& reduced);

// {"n", "terms": [[qubit-index list, coefficient], ...]}
std::string to_json(const DiagonalHamiltonian& h);

// [{"gate": "ry"|"cx"|"t"|"phase"|"rx", "qubits": [...], "param_slot": k|null}]
std::string to_json(const AnsatzCircuit& circuit);

// little-endian doubles with an 8-byte count header
void write_dense_table(const DiagonalHamiltonian& h, const std::string& path);

} // namespace vqf
