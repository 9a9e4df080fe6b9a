#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hopps/circuit.hpp"
#include "hopps/coupling_map.hpp"
#include "hopps/encoder.hpp"
#include "hopps/phase_poly.hpp"
#include "hopps/sat.hpp"

namespace hopps {

/// One solver call made during synthesis.
struct SolveRecord {
    enum class Stage { Primary, Descent };
    Stage stage = Stage::Primary;
    /// Step count K of the instance.
    std::size_t steps = 0;
    /// Depth limit or CNOT budget in force during a descent call.
    std::optional<std::size_t> bound;
    sat::SolveStatus status = sat::SolveStatus::Unsat;
    double seconds = 0.0;
};

struct SynthesisRequest {
    PhasePolyRep rep;
    /// May be wider than rep; only qubits 0..rep.num_qubits()-1 are used.
    CouplingMap coupling;
    Mode mode = Mode::CnotOptimal;
    bool doubly = false;
    std::optional<std::size_t> k_max;
    /// Wall-clock budget for the whole call.
    double timeout_s = std::numeric_limits<double>::infinity();
    sat::BackendFactory backend = sat::internal_backend();
    /// Called with the first satisfiable primary instance, before any descent constraints.
    std::function<void(const sat::SatInstance&, std::size_t steps)> on_optimal_instance;
};

struct SynthesisResult {
    Circuit circuit;
    std::size_t cnot_count = 0;
    std::size_t cnot_depth = 0;
    /// False when the secondary descent was cut short by the time budget.
    bool optimal = true;
    std::vector<std::vector<Cnot>> steps;
    /// Layer of each emitted CNOT, in circuit order: the step in depth mode, the solver's
    /// layer assignment for doubly CNOT mode, ASAP layering otherwise.
    std::vector<std::size_t> layers;
    std::vector<SolveRecord> trail;
    double solve_time_s = 0.0;
};

/// Smallest K worth trying. CNOT mode: number of terms that are not rows of the initial
/// parity. Depth mode: 0 if nothing is left to do, otherwise 1.
[[nodiscard]] std::size_t lower_bound(const PhasePolyRep& rep, Mode mode);

/// 2n^2 + |T|n.
[[nodiscard]] std::size_t default_k_max(const PhasePolyRep& rep);

/// Optimal synthesis, optionally doubly optimal. Throws NoSolutionError when every K up
/// to k_max is unsatisfiable and TimeoutError when the budget runs out before any model.
[[nodiscard]] SynthesisResult synthesize(const SynthesisRequest& req);

/// Replays the model's CNOTs, checks them against its parity variables and places the
/// rotations. Throws Error on any disagreement.
[[nodiscard]] Circuit decode_circuit(const sat::SatModel& model, const encoding::Encoding& enc, const PhasePolyRep& rep);

} // namespace hopps
