#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hopps/angle.hpp"

namespace hopps {

using Qubit = std::size_t;

struct Cnot {
    Qubit control = 0;
    Qubit target = 0;
    friend bool operator==(const Cnot&, const Cnot&) = default;
};

struct Rz {
    Angle angle;
    Qubit qubit = 0;
};

/// Any gate outside {CNOT, Rz}. Carried through passes untouched; acts as a block boundary.
struct Opaque {
    std::string name;
    std::vector<Qubit> qubits;
    std::vector<std::string> params;
};

using Gate = std::variant<Cnot, Rz, Opaque>;

/// Qubits a gate acts on, control first for CNOTs.
[[nodiscard]] std::vector<Qubit> gate_qubits(const Gate& g);
[[nodiscard]] inline bool is_phase_gate(const Gate& g) { return !std::holds_alternative<Opaque>(g); }
[[nodiscard]] inline bool is_barrier(const Gate& g) {
    const auto* op = std::get_if<Opaque>(&g);
    return op != nullptr && op->name == "barrier";
}

/// Ordered gate list over a fixed number of qubits.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// Appends after checking qubit indices; throws ValidationError on a bad gate.
    Circuit& add(Gate g);
    Circuit& cnot(Qubit control, Qubit target) { return add(Cnot{control, target}); }
    Circuit& rz(Angle angle, Qubit q) { return add(Rz{std::move(angle), q}); }
    Circuit& opaque(std::string name, std::vector<Qubit> qubits, std::vector<std::string> params = {}) {
        return add(Opaque{std::move(name), std::move(qubits), std::move(params)});
    }
    Circuit& append(const Circuit& other);

    /// True when every gate is a CNOT or an Rz.
    [[nodiscard]] bool is_phase_circuit() const;

private:
    std::size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

[[nodiscard]] std::size_t cnot_count(const Circuit& c);

/// Greedy per-qubit layering over CNOTs only; Rz and opaque gates contribute nothing.
[[nodiscard]] std::size_t cnot_depth(const Circuit& c);

/// ASAP CNOT layer index of each CNOT, in gate order. Depth is 1 + max entry.
[[nodiscard]] std::vector<std::size_t> cnot_layers(const Circuit& c);

/// (baseline - value) / baseline. Zero baseline yields 0.
[[nodiscard]] double improvement_ratio(double baseline, double value);

} // namespace hopps
