#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hopps/coupling_map.hpp"
#include "hopps/phase_poly.hpp"

namespace hopps {

// Phase-polynomial file:
//   {"n": n, "initial": [[bits]], "final": [[bits]], "terms": [[bits], ...],
//    "angles": [number-or-string, ...]}
// Bit j of a row is the coefficient of x_j. Symbolic angles are strings such as "gamma".
[[nodiscard]] std::string rep_to_json(const PhasePolyRep& rep, int indent = 2);
[[nodiscard]] PhasePolyRep rep_from_json(std::string_view text);

// Coupling-map file: {"num_qubits": n, "edges": [[i, j], ...]}
[[nodiscard]] std::string coupling_map_to_json(const CouplingMap& cm, int indent = 2);
[[nodiscard]] CouplingMap coupling_map_from_json(std::string_view text);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace hopps
