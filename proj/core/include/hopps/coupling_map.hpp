#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopps/circuit.hpp"

namespace hopps {

/// Ordered (control, target) pair along a coupling-map edge.
struct DirectedEdge {
    Qubit control = 0;
    Qubit target = 0;
    [[nodiscard]] bool touches(Qubit q) const noexcept { return control == q || target == q; }
    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Undirected qubit-connectivity graph. CNOTs may run either way along an edge.
class CouplingMap {
public:
    CouplingMap() = default;
    /// Throws ValidationError on self-loops or out-of-range endpoints.
    CouplingMap(std::size_t num_qubits, const std::vector<std::pair<Qubit, Qubit>>& edges);

    static CouplingMap line(std::size_t n);
    static CouplingMap ring(std::size_t n);
    static CouplingMap complete(std::size_t n);
    static CouplingMap grid(std::size_t rows, std::size_t cols);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    /// Edges as (min, max) pairs in sorted order.
    [[nodiscard]] const std::set<std::pair<Qubit, Qubit>>& edges() const noexcept { return edges_; }
    [[nodiscard]] bool has_edge(Qubit a, Qubit b) const;
    /// Both orientations of every edge: (a,b) then (b,a) for each sorted edge (a,b).
    [[nodiscard]] std::vector<DirectedEdge> directed_edges() const;
    [[nodiscard]] bool is_connected() const;

    friend bool operator==(const CouplingMap&, const CouplingMap&) = default;

private:
    std::size_t num_qubits_ = 0;
    std::set<std::pair<Qubit, Qubit>> edges_;
};

/// Restriction of `cm` to `qubits`, relabeled 0..k-1 in the given order.
[[nodiscard]] CouplingMap induced_coupling(const CouplingMap& cm, std::span<const Qubit> qubits);

/// True iff every CNOT (and every two-qubit opaque gate) lies on an edge of `cm`.
/// Barriers are exempt; opaque gates on three or more qubits are never executable.
[[nodiscard]] bool validate_topology(const Circuit& c, const CouplingMap& cm);

} // namespace hopps
