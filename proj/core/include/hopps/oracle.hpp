#pragma once

#include <cstddef>
#include <vector>

#include "hopps/circuit.hpp"
#include "hopps/coupling_map.hpp"
#include "hopps/phase_poly.hpp"

namespace hopps {

struct OracleLimits {
    /// Distinct (parity, matched-terms) states the search may visit.
    std::size_t max_nodes = 5'000'000;
    /// Optimal circuits that may be enumerated.
    std::size_t max_solutions = 200'000;
};

struct OracleResult {
    /// Minimal CNOT count or minimal CNOT depth.
    std::size_t value = 0;
    /// Every optimal CNOT sequence, one entry per layer (single CNOT per layer in count mode).
    std::vector<std::vector<std::vector<Cnot>>> solutions;
    /// The same sequences with rotations placed.
    std::vector<Circuit> circuits;
};

/// Breadth-first search over single CNOTs. Supports up to 8 qubits and 32 distinct terms;
/// throws Error when a limit is exceeded and NoSolutionError when the goal is unreachable.
[[nodiscard]] OracleResult oracle_min_count(const PhasePolyRep& rep, const CouplingMap& cm, const OracleLimits& limits = {});

/// Breadth-first search over layers of qubit-disjoint CNOTs.
[[nodiscard]] OracleResult oracle_min_depth(const PhasePolyRep& rep, const CouplingMap& cm, const OracleLimits& limits = {});

} // namespace hopps
