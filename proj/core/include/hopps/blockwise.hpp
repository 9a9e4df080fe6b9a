#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopps/circuit.hpp"
#include "hopps/coupling_map.hpp"
#include "hopps/peephole.hpp"

namespace hopps {

struct BlockwiseConfig {
    std::size_t max_block_qubits = 3;
    std::size_t max_block_depth = 20;
    std::size_t iters_full = 5;
    std::size_t iters_sample = 5;
    /// Share of partition blocks resynthesized per sampling iteration, in (0, 1].
    double sample_fraction = 0.5;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    ResynthOptions resynth{Mode::CnotOptimal, true, 60.0, std::nullopt, sat::internal_backend()};
    /// Checked between iterations; the best circuit so far is returned once exceeded.
    double wall_budget_s = 24.0 * 3600.0;

    /// Throws ValidationError on a zero block cap or a fraction outside (0, 1].
    void validate() const;
};

struct IterationRecord {
    std::size_t iteration = 0;
    /// "initial", "full" or "sample".
    std::string stage;
    std::size_t cnot_count = 0;
    std::size_t cnot_depth = 0;
    std::size_t blocks_attempted = 0;
    std::size_t blocks_improved = 0;
    double wall_time_s = 0.0;
    /// The spliced circuit regressed globally and was discarded.
    bool rolled_back = false;
};

struct IterationTrace {
    std::vector<IterationRecord> records;

    /// One JSON object per line.
    [[nodiscard]] std::string to_jsonl() const;
    [[nodiscard]] std::string to_csv() const;
};

/// Greedy scan-line partition of the phase gates into blocks within the qubit and depth
/// caps. Opaque gates are left out.
[[nodiscard]] std::vector<Block> partition(const Circuit& c, const BlockwiseConfig& cfg);

/// Partition restarted at a random gate offset, then a uniform sample of
/// ceil(sample_fraction * N) of its blocks, in circuit order.
[[nodiscard]] std::vector<Block> sample_blocks(const Circuit& c, const BlockwiseConfig& cfg, std::mt19937_64& rng);

struct BlockwiseResult {
    Circuit circuit;
    IterationTrace trace;
};

/// Full-partition rounds until the metrics stop changing, then sampling rounds.
[[nodiscard]] BlockwiseResult iterate_optimize(const Circuit& c, const CouplingMap& cm, const BlockwiseConfig& cfg);

} // namespace hopps
