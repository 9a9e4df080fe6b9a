#include "hopps/circuit.hpp"

#include <algorithm>
#include <set>

#include "hopps/error.hpp"

namespace hopps {

std::vector<Qubit> gate_qubits(const Gate& g) {
    if (const auto* cx = std::get_if<Cnot>(&g)) return {cx->control, cx->target};
    if (const auto* rz = std::get_if<Rz>(&g)) return {rz->qubit};
    return std::get<Opaque>(g).qubits;
}

Circuit& Circuit::add(Gate g) {
    const auto qs = gate_qubits(g);
    for (Qubit q : qs) {
        if (q >= num_qubits_) {
            throw ValidationError("gate qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits_) + "-qubit circuit");
        }
    }
    if (const auto* cx = std::get_if<Cnot>(&g); cx != nullptr && cx->control == cx->target) {
        throw ValidationError("CNOT control equals target");
    }
    if (std::set<Qubit>(qs.begin(), qs.end()).size() != qs.size()) {
        throw ValidationError("gate acts on a repeated qubit");
    }
    gates_.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ > num_qubits_) throw ValidationError("appended circuit is wider than target");
    for (const auto& g : other.gates_) add(g);
    return *this;
}

bool Circuit::is_phase_circuit() const { return std::all_of(gates_.begin(), gates_.end(), is_phase_gate); }

std::size_t cnot_count(const Circuit& c) {
    return static_cast<std::size_t>(
        std::count_if(c.gates().begin(), c.gates().end(), [](const Gate& g) { return std::holds_alternative<Cnot>(g); }));
}

std::vector<std::size_t> cnot_layers(const Circuit& c) {
    std::vector<std::size_t> level(c.num_qubits(), 0);
    std::vector<std::size_t> layers;
    for (const auto& g : c.gates()) {
        const auto* cx = std::get_if<Cnot>(&g);
        if (cx == nullptr) continue;
        const std::size_t layer = std::max(level[cx->control], level[cx->target]);
        level[cx->control] = level[cx->target] = layer + 1;
        layers.push_back(layer);
    }
    return layers;
}

std::size_t cnot_depth(const Circuit& c) {
    const auto layers = cnot_layers(c);
    if (layers.empty()) return 0;
    return *std::max_element(layers.begin(), layers.end()) + 1;
}

double improvement_ratio(double baseline, double value) {
    if (baseline == 0.0) return 0.0;
    return (baseline - value) / baseline;
}

} // namespace hopps
