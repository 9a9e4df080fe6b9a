#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hopps/circuit.hpp"
#include "hopps/coupling_map.hpp"
#include "hopps/encoder.hpp"
#include "hopps/phase_poly.hpp"
#include "hopps/sat.hpp"

namespace hopps {

/// A group of {CNOT, Rz} gates of a parent circuit that can be replaced as one unit.
struct Block {
    /// Local qubit i is parent qubit qubits[i], in first-touch order.
    std::vector<Qubit> qubits;
    /// Positions of the member gates in the parent, ascending.
    std::vector<std::size_t> members;
    /// Member gates over local qubits.
    Circuit circuit;

    [[nodiscard]] std::size_t first() const { return members.front(); }
    [[nodiscard]] std::size_t last() const { return members.back(); }
    /// Phase polynomial of the local circuit from the identity.
    [[nodiscard]] PhasePolyRep rep() const { return extract_rep(circuit); }
};

/// Maximal blocks: each phase gate joins, and if possible merges, the blocks last active on
/// its qubits, unless that would make some outside gate both depend on and precede the
/// block. Opaque gates stay outside every block.
[[nodiscard]] std::vector<Block> find_blocks(const Circuit& c);

/// Rebuilds `parent` with each block's members replaced by the matching entry of
/// `replacements` (local circuits over the same qubit lists). Blocks are emitted whole in
/// a dependency order that keeps every other gate in its relative order.
[[nodiscard]] Circuit splice(const Circuit& parent, std::span<const Block> blocks, std::span<const Circuit> replacements);

struct ResynthOptions {
    Mode mode = Mode::CnotOptimal;
    bool doubly = true;
    double timeout_s = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> k_max;
    sat::BackendFactory backend = sat::internal_backend();
};

enum class BlockOutcome {
    Improved,     // replaced by a better circuit
    Kept,         // resynthesis was no better
    Disconnected, // induced coupling map not connected, not attempted
    Failed,       // timeout or no solution within k_max
};

[[nodiscard]] const char* to_string(BlockOutcome o);

struct BlockResult {
    /// Local circuit to splice in; the original when nothing better was found.
    Circuit circuit;
    BlockOutcome outcome = BlockOutcome::Kept;
};

/// Resynthesizes the block on the coupling map induced by its qubits. Never throws for
/// solver trouble; the original circuit comes back instead.
[[nodiscard]] BlockResult resynth_block(const Block& b, const CouplingMap& cm, const ResynthOptions& opts);

/// One find/resynthesize/splice sweep.
struct PeepholeRound {
    /// Circuit the blocks were cut from.
    Circuit input;
    std::vector<Block> blocks;
    std::vector<BlockResult> results;
    /// Spliced result of this round.
    Circuit output;
    /// False when the output did not improve the whole circuit and was dropped.
    bool accepted = false;
};

struct PeepholeReport {
    Circuit circuit;
    /// Every round run, in order. All but possibly the last are accepted.
    std::vector<PeepholeRound> rounds;
};

/// Repeats rounds while the whole circuit's (target, other) metrics strictly improve, since a
/// resynthesized block can free qubits and let neighbouring blocks merge. The output is a
/// fixpoint: running the pass on it again changes nothing.
[[nodiscard]] PeepholeReport peephole_pass(const Circuit& c, const CouplingMap& cm, const ResynthOptions& opts,
                                           std::size_t jobs = 1);

} // namespace hopps
