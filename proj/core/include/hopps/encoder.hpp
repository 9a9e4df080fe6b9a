#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hopps/bit_vector.hpp"
#include "hopps/coupling_map.hpp"
#include "hopps/parity_matrix.hpp"
#include "hopps/sat.hpp"

namespace hopps {

/// Primary optimization target.
enum class Mode { CnotOptimal, DepthOptimal };

[[nodiscard]] const char* to_string(Mode m);
/// Accepts "cnot" or "depth".
[[nodiscard]] Mode parse_mode(const std::string& text);

} // namespace hopps

namespace hopps::encoding {

struct EncodingConfig {
    Mode mode = Mode::CnotOptimal;
    /// K: CNOT count in CNOT mode, CNOT layers in depth mode.
    std::size_t steps = 0;
    std::size_t num_qubits = 0;
    std::vector<DirectedEdge> directed_edges;

    static EncodingConfig for_map(Mode mode, std::size_t steps, const CouplingMap& cm);
};

/// Variable ids of every family; index order matches the family tuples.
struct VarLayout {
    std::vector<std::vector<int>> cnot;                // [k][e], k < K
    std::vector<std::vector<std::vector<int>>> parity; // [k][i][j], k <= K
    std::vector<std::vector<int>> layer;               // D[k][l], K x K
    std::vector<std::vector<int>> layer_edge;          // L[l][e], K x |E|
};

/// One SAT instance for a fixed step count, plus what has been layered on top of it.
struct Encoding {
    sat::SatInstance instance;
    VarLayout layout;
    EncodingConfig config;
    bool has_mode = false;
    bool has_layers = false;
};

/// Initial/final parity, term matching over every slice 0..K, and CNOT transitions.
/// Throws ValidationError on dimension mismatch or a zero term.
[[nodiscard]] Encoding encode_common(const ParityMatrix& initial, const ParityMatrix& final,
                                     std::span<const BitVector> terms, const EncodingConfig& config);

/// Exactly one CNOT per step, so K is the CNOT count.
void add_cnot_mode(Encoding& enc);
/// At least one CNOT per step and at most one per qubit per step, so K is the depth.
void add_depth_mode(Encoding& enc);

/// Gate-to-layer matrix D and layer-to-edge matrix L for a CNOT-mode encoding: one layer
/// per gate, contiguous nondecreasing layers, qubit-disjoint layers.
void add_layer_assignment(Encoding& enc);
/// No gate in a layer >= d. d == 0 with K > 0 makes the instance unsatisfiable.
void add_depth_limit(Encoding& enc, std::size_t d);
/// At most n_c CNOTs over all steps of a depth-mode encoding.
void add_cnot_budget(Encoding& enc, std::size_t n_c);

/// Selected CNOTs per step, ascending edge index within a step.
[[nodiscard]] std::vector<std::vector<Cnot>> decode_steps(const sat::SatModel& model, const Encoding& enc);
/// Parity rows of every slice as assigned by the model.
[[nodiscard]] std::vector<std::vector<BitVector>> decode_parities(const sat::SatModel& model, const Encoding& enc);
/// Layer index of each step's gate; requires add_layer_assignment.
[[nodiscard]] std::vector<std::size_t> decode_layers(const sat::SatModel& model, const Encoding& enc);

} // namespace hopps::encoding
