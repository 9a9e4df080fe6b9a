#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hopps/circuit.hpp"

namespace hopps {

/// Parses the OpenQASM 2.0 subset used by this toolkit.
///
/// `qreg` declarations are concatenated into one flat qubit index space in declaration
/// order. `cx` and `rz` map to Cnot and Rz; every other gate application (including
/// `barrier` and `measure`) becomes an Opaque gate. `gate` definitions, `creg`, `include`
/// and the version line are accepted and ignored. Errors throw ParseError with the
/// 1-based line and column of the offending statement.
[[nodiscard]] Circuit parse_qasm(std::string_view text);
[[nodiscard]] Circuit read_qasm_file(const std::filesystem::path& path);

/// Emits a single `qreg q[n]` program that parse_qasm reads back to the same circuit.
[[nodiscard]] std::string to_qasm(const Circuit& c);

} // namespace hopps
