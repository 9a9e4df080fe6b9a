#include "hopps/blockwise.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "block_grouper.hpp"
#include "hopps/error.hpp"
#include "hopps/parallel.hpp"

namespace hopps {

void BlockwiseConfig::validate() const {
    if (max_block_qubits == 0) throw ValidationError("max_block_qubits must be positive");
    if (max_block_depth == 0) throw ValidationError("max_block_depth must be positive");
    if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) throw ValidationError("sample_fraction must be in (0, 1]");
}

std::string IterationTrace::to_jsonl() const {
    std::string out;
    for (const auto& r : records) {
        const nlohmann::json j{{"iteration", r.iteration},
                               {"stage", r.stage},
                               {"cnot_count", r.cnot_count},
                               {"cnot_depth", r.cnot_depth},
                               {"blocks_attempted", r.blocks_attempted},
                               {"blocks_improved", r.blocks_improved},
                               {"wall_time_s", r.wall_time_s},
                               {"rolled_back", r.rolled_back}};
        out += j.dump() + '\n';
    }
    return out;
}

std::string IterationTrace::to_csv() const {
    std::ostringstream os;
    os << "iteration,stage,cnot_count,cnot_depth,blocks_attempted,blocks_improved,wall_time_s,rolled_back\n";
    for (const auto& r : records) {
        os << r.iteration << ',' << r.stage << ',' << r.cnot_count << ',' << r.cnot_depth << ',' << r.blocks_attempted << ','
           << r.blocks_improved << ',' << r.wall_time_s << ',' << (r.rolled_back ? 1 : 0) << '\n';
    }
    return os.str();
}

namespace {

std::vector<Block> partition_from(const Circuit& c, const BlockwiseConfig& cfg, std::size_t offset) {
    cfg.validate();
    auto fits = [&](const std::vector<std::size_t>& members) {
        const Block b = detail::make_block(c, members);
        return b.qubits.size() <= cfg.max_block_qubits && cnot_depth(b.circuit) <= cfg.max_block_depth;
    };
    detail::BlockGrouper grouper(c, fits);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == offset) grouper.seal_all();
        grouper.add(i);
    }
    return grouper.blocks();
}

} // namespace

std::vector<Block> partition(const Circuit& c, const BlockwiseConfig& cfg) { return partition_from(c, cfg, 0); }

std::vector<Block> sample_blocks(const Circuit& c, const BlockwiseConfig& cfg, std::mt19937_64& rng) {
    const std::size_t offset = c.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
    auto all = partition_from(c, cfg, offset);
    const auto want = static_cast<std::size_t>(std::ceil(cfg.sample_fraction * static_cast<double>(all.size()) - 1e-12));
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    // Partial Fisher-Yates: the first `want` slots are the sample.
    for (std::size_t i = 0; i < want && i + 1 < idx.size(); ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(i, idx.size() - 1)(rng);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(std::min(want, idx.size()));
    std::sort(idx.begin(), idx.end());
    std::vector<Block> out;
    out.reserve(idx.size());
    for (const std::size_t i : idx) out.push_back(std::move(all[i]));
    return out;
}

BlockwiseResult iterate_optimize(const Circuit& c, const CouplingMap& cm, const BlockwiseConfig& cfg) {
    cfg.validate();
    if (!validate_topology(c, cm)) throw ValidationError("input circuit does not respect the coupling map");
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
    const bool cnot_mode = cfg.resynth.mode == Mode::CnotOptimal;
    auto target = [&](const Circuit& x) { return cnot_mode ? cnot_count(x) : cnot_depth(x); };

    BlockwiseResult result{c, {}};
    result.trace.records.push_back({0, "initial", cnot_count(c), cnot_depth(c), 0, 0, 0.0, false});
    std::mt19937_64 rng(cfg.seed);

    auto round = [&](std::size_t iteration, const std::string& stage, const std::vector<Block>& blocks) {
        const auto t0 = Clock::now();
        const auto results = run_parallel(
            blocks, [&](const Block& b) { return resynth_block(b, cm, cfg.resynth); },
            [](const Block& b) { return BlockResult{b.circuit, BlockOutcome::Failed}; }, cfg.jobs);
        std::vector<Circuit> replacements;
        std::size_t improved = 0;
        for (const auto& r : results) {
            replacements.push_back(r.circuit);
            if (r.outcome == BlockOutcome::Improved) ++improved;
        }
        Circuit next = splice(result.circuit, blocks, replacements);
        IterationRecord rec{iteration, stage, 0, 0, blocks.size(), improved, 0.0, false};
        if (target(next) > target(result.circuit)) {
            rec.rolled_back = true;
        } else {
            result.circuit = std::move(next);
        }
        rec.cnot_count = cnot_count(result.circuit);
        rec.cnot_depth = cnot_depth(result.circuit);
        rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        result.trace.records.push_back(rec);
    };

    std::size_t iteration = 0;
    for (std::size_t i = 0; i < cfg.iters_full && elapsed() < cfg.wall_budget_s; ++i) {
        const auto before = std::pair{cnot_count(result.circuit), cnot_depth(result.circuit)};
        round(++iteration, "full", partition(result.circuit, cfg));
        const auto& last = result.trace.records.back();
        if (std::pair{last.cnot_count, last.cnot_depth} == before) break;
    }
    for (std::size_t i = 0; i < cfg.iters_sample && elapsed() < cfg.wall_budget_s; ++i) {
        round(++iteration, "sample", sample_blocks(result.circuit, cfg, rng));
    }
    return result;
}

} // namespace hopps
