#include "hopps/peephole.hpp"

#include <queue>
#include <set>
#include <utility>

#include "block_grouper.hpp"
#include "hopps/error.hpp"
#include "hopps/parallel.hpp"
#include "hopps/synthesizer.hpp"

namespace hopps {

const char* to_string(BlockOutcome o) {
    switch (o) {
    case BlockOutcome::Improved: return "improved";
    case BlockOutcome::Kept: return "kept";
    case BlockOutcome::Disconnected: return "disconnected";
    case BlockOutcome::Failed: return "failed";
    }
    return "?";
}

std::vector<Block> find_blocks(const Circuit& c) {
    detail::BlockGrouper grouper(c);
    for (std::size_t i = 0; i < c.size(); ++i) grouper.add(i);
    return grouper.blocks();
}

Circuit splice(const Circuit& parent, std::span<const Block> blocks, std::span<const Circuit> replacements) {
    if (blocks.size() != replacements.size()) throw std::invalid_argument("one replacement per block required");
    const std::size_t num_gates = parent.size();
    // Units 0..B-1 are blocks; gate i outside every block is unit B + i.
    const std::size_t nb = blocks.size();
    std::vector<std::size_t> unit_of(num_gates);
    for (std::size_t i = 0; i < num_gates; ++i) unit_of[i] = nb + i;
    for (std::size_t b = 0; b < nb; ++b) {
        if (replacements[b].num_qubits() != blocks[b].qubits.size()) throw std::invalid_argument("replacement width differs from block");
        for (const std::size_t m : blocks[b].members) {
            if (m >= num_gates || unit_of[m] != nb + m) throw std::invalid_argument("blocks overlap or exceed the circuit");
            unit_of[m] = b;
        }
    }

    const std::size_t num_units = nb + num_gates;
    std::vector<std::size_t> key(num_units);
    std::vector<bool> present(num_units, false);
    for (std::size_t i = 0; i < num_gates; ++i) {
        const std::size_t u = unit_of[i];
        if (!present[u]) key[u] = i;
        present[u] = true;
    }
    std::vector<std::set<std::size_t>> succ(num_units);
    std::vector<std::size_t> indegree(num_units, 0);
    std::vector<std::optional<std::size_t>> last(parent.num_qubits());
    for (std::size_t i = 0; i < num_gates; ++i) {
        const std::size_t u = unit_of[i];
        for (const Qubit q : gate_qubits(parent.gates()[i])) {
            if (last[q] && *last[q] != u && succ[*last[q]].insert(u).second) ++indegree[u];
            last[q] = u;
        }
    }

    using Entry = std::pair<std::size_t, std::size_t>; // (first position, unit)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    for (std::size_t u = 0; u < num_units; ++u) {
        if (present[u] && indegree[u] == 0) ready.emplace(key[u], u);
    }
    Circuit out(parent.num_qubits());
    std::size_t emitted = 0;
    while (!ready.empty()) {
        const std::size_t u = ready.top().second;
        ready.pop();
        ++emitted;
        if (u < nb) {
            const auto& map = blocks[u].qubits;
            for (const Gate& g : replacements[u].gates()) {
                if (const auto* cx = std::get_if<Cnot>(&g)) {
                    out.cnot(map[cx->control], map[cx->target]);
                } else if (const auto* rz = std::get_if<Rz>(&g)) {
                    out.rz(rz->angle, map[rz->qubit]);
                } else {
                    throw std::invalid_argument("replacement contains an opaque gate");
                }
            }
        } else {
            out.add(parent.gates()[u - nb]);
        }
        for (const std::size_t v : succ[u]) {
            if (--indegree[v] == 0) ready.emplace(key[v], v);
        }
    }
    const auto expected = static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
    if (emitted != expected) throw Error("blocks cannot be emitted atomically without reordering dependent gates");
    return out;
}

BlockResult resynth_block(const Block& b, const CouplingMap& cm, const ResynthOptions& opts) {
    BlockResult kept{b.circuit, BlockOutcome::Kept};
    if (cnot_count(b.circuit) == 0) return kept;
    const CouplingMap local = induced_coupling(cm, b.qubits);
    if (!local.is_connected()) return {b.circuit, BlockOutcome::Disconnected};

    SynthesisRequest req;
    req.rep = b.rep();
    req.coupling = local;
    req.mode = opts.mode;
    req.doubly = opts.doubly;
    req.k_max = opts.k_max;
    req.timeout_s = opts.timeout_s;
    req.backend = opts.backend;
    SynthesisResult res;
    try {
        res = synthesize(req);
    } catch (const TimeoutError&) {
        return {b.circuit, BlockOutcome::Failed};
    } catch (const NoSolutionError&) {
        return {b.circuit, BlockOutcome::Failed};
    }

    const std::size_t old_count = cnot_count(b.circuit);
    const std::size_t old_depth = cnot_depth(b.circuit);
    const bool cnot_mode = opts.mode == Mode::CnotOptimal;
    const auto old_key = cnot_mode ? std::pair{old_count, old_depth} : std::pair{old_depth, old_count};
    const auto new_key = cnot_mode ? std::pair{res.cnot_count, res.cnot_depth} : std::pair{res.cnot_depth, res.cnot_count};
    const bool better = new_key.first < old_key.first || (new_key.first == old_key.first && new_key.second < old_key.second);
    if (!better) return kept;
    return {std::move(res.circuit), BlockOutcome::Improved};
}

PeepholeReport peephole_pass(const Circuit& c, const CouplingMap& cm, const ResynthOptions& opts, std::size_t jobs) {
    auto key = [&](const Circuit& x) {
        const auto count = cnot_count(x);
        const auto depth = cnot_depth(x);
        return opts.mode == Mode::CnotOptimal ? std::pair{count, depth} : std::pair{depth, count};
    };
    PeepholeReport report;
    report.circuit = c;
    while (true) {
        PeepholeRound round;
        round.input = report.circuit;
        round.blocks = find_blocks(round.input);
        round.results = run_parallel(
            round.blocks, [&](const Block& b) { return resynth_block(b, cm, opts); },
            [](const Block& b) { return BlockResult{b.circuit, BlockOutcome::Failed}; }, jobs);
        std::vector<Circuit> replacements;
        replacements.reserve(round.results.size());
        for (const auto& r : round.results) replacements.push_back(r.circuit);
        round.output = splice(round.input, round.blocks, replacements);
        round.accepted = key(round.output) < key(round.input);
        if (round.accepted) report.circuit = round.output;
        const bool again = round.accepted;
        report.rounds.push_back(std::move(round));
        if (!again) break;
    }
    return report;
}

} // namespace hopps
