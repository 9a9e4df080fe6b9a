#include "hopps/coupling_map.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "hopps/error.hpp"

namespace hopps {

CouplingMap::CouplingMap(std::size_t num_qubits, const std::vector<std::pair<Qubit, Qubit>>& edges)
    : num_qubits_(num_qubits) {
    for (auto [a, b] : edges) {
        if (a == b) throw ValidationError("coupling map has a self-loop on qubit " + std::to_string(a));
        if (a >= num_qubits || b >= num_qubits) throw ValidationError("coupling map edge endpoint out of range");
        edges_.emplace(std::min(a, b), std::max(a, b));
    }
}

CouplingMap CouplingMap::line(std::size_t n) {
    std::vector<std::pair<Qubit, Qubit>> e;
    for (Qubit i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return {n, e};
}

CouplingMap CouplingMap::ring(std::size_t n) {
    std::vector<std::pair<Qubit, Qubit>> e;
    for (Qubit i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    if (n > 2) e.emplace_back(n - 1, 0);
    return {n, e};
}

CouplingMap CouplingMap::complete(std::size_t n) {
    std::vector<std::pair<Qubit, Qubit>> e;
    for (Qubit i = 0; i < n; ++i) {
        for (Qubit j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    return {n, e};
}

CouplingMap CouplingMap::grid(std::size_t rows, std::size_t cols) {
    std::vector<std::pair<Qubit, Qubit>> e;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Qubit q = r * cols + c;
            if (c + 1 < cols) e.emplace_back(q, q + 1);
            if (r + 1 < rows) e.emplace_back(q, q + cols);
        }
    }
    return {rows * cols, e};
}

bool CouplingMap::has_edge(Qubit a, Qubit b) const { return edges_.contains({std::min(a, b), std::max(a, b)}); }

std::vector<DirectedEdge> CouplingMap::directed_edges() const {
    std::vector<DirectedEdge> out;
    out.reserve(edges_.size() * 2);
    for (auto [a, b] : edges_) {
        out.push_back({a, b});
        out.push_back({b, a});
    }
    return out;
}

bool CouplingMap::is_connected() const {
    if (num_qubits_ <= 1) return true;
    std::vector<std::vector<Qubit>> adj(num_qubits_);
    for (auto [a, b] : edges_) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(num_qubits_, false);
    std::vector<Qubit> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Qubit q = stack.back();
        stack.pop_back();
        for (Qubit r : adj[q]) {
            if (!seen[r]) {
                seen[r] = true;
                ++reached;
                stack.push_back(r);
            }
        }
    }
    return reached == num_qubits_;
}

CouplingMap induced_coupling(const CouplingMap& cm, std::span<const Qubit> qubits) {
    std::vector<std::pair<Qubit, Qubit>> edges;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            if (cm.has_edge(qubits[i], qubits[j])) edges.emplace_back(i, j);
        }
    }
    return {qubits.size(), edges};
}

bool validate_topology(const Circuit& c, const CouplingMap& cm) {
    if (c.num_qubits() != cm.num_qubits()) {
        throw ValidationError("circuit has " + std::to_string(c.num_qubits()) + " qubits but coupling map has " +
                              std::to_string(cm.num_qubits()));
    }
    for (const auto& g : c.gates()) {
        if (is_barrier(g)) continue;
        const auto qs = gate_qubits(g);
        if (qs.size() == 2 && !cm.has_edge(qs[0], qs[1])) return false;
        if (qs.size() > 2) return false;
    }
    return true;
}

} // namespace hopps
