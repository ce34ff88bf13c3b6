#pragma once

#include <string>
#include <vector>

#include "gll/propagation.hpp"
#include "gll/symbols.hpp"
#include "gll/symplectic.hpp"
#include "json.hpp"

namespace gll::io {

using json = nlohmann::ordered_json;

// Lattices: {"dim": n, "basis": [columns]}.
json to_json(const Lattice& L);
Lattice lattice_from_json(const json& j);

// Symbol families: {"gamma_basis", "lambda_basis", "shifts", "symbols"};
// each symbol is {"fourier": [{"freq": [...], "re": r, "im": i}, ...]}.
// Only trig-polynomial symbols have a wire format.
json to_json(const SymbolSet& s);
SymbolSet symbol_set_from_json(const json& j);

// Rules: {"C0": [[int]], "gamma0": [int]}.
json to_json(const PropagationRule& rule);
PropagationRule rule_from_json(const json& j);

// Atom families: [{"x": [...], "y": [...]}, ...].
json atoms_to_json(const std::vector<PhasePoint>& atoms);
std::vector<PhasePoint> atoms_from_json(const json& j);

// Real matrices travel as row-major nested arrays.
json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j);

// Shortest round-trippable decimal form, '.' separator, locale-free.
std::string format_double(double v);

std::string csv_row(const std::vector<std::string>& fields);

// CLI arguments that carry structured data accept either inline JSON or a
// path to a JSON file; anything starting with '[', '{', or whitespace-then-
// bracket parses inline.
json load_json_argument(const std::string& arg);

}  // namespace gll::io
