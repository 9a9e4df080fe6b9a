#include "hopps/synthesizer.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_set>

#include "hopps/error.hpp"

namespace hopps {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool has_row(const ParityMatrix& m, const BitVector& v) {
    const auto rows = m.rows();
    return std::find(rows.begin(), rows.end(), v) != rows.end();
}

std::size_t model_cnots(const sat::SatModel& model, const encoding::Encoding& enc) {
    std::size_t total = 0;
    for (const auto& step : enc.layout.cnot) {
        total += static_cast<std::size_t>(std::count_if(step.begin(), step.end(), [&](int v) { return model.value(v); }));
    }
    return total;
}

std::size_t model_depth(const sat::SatModel& model, const encoding::Encoding& enc) {
    const auto layers = encoding::decode_layers(model, enc);
    return layers.empty() ? 0 : 1 + *std::max_element(layers.begin(), layers.end());
}

} // namespace

std::size_t lower_bound(const PhasePolyRep& rep, Mode mode) {
    const auto& terms = rep.table.terms();
    if (mode == Mode::DepthOptimal) {
        const bool done = rep.initial == rep.final &&
                          std::all_of(terms.begin(), terms.end(), [&](const BitVector& t) { return has_row(rep.initial, t); });
        return done ? 0 : 1;
    }
    std::unordered_set<BitVector> missing;
    for (const auto& t : terms) {
        if (!has_row(rep.initial, t)) missing.insert(t);
    }
    return missing.size();
}

std::size_t default_k_max(const PhasePolyRep& rep) {
    const std::size_t n = rep.num_qubits();
    return 2 * n * n + rep.table.size() * n;
}

Circuit decode_circuit(const sat::SatModel& model, const encoding::Encoding& enc, const PhasePolyRep& rep) {
    const auto steps = encoding::decode_steps(model, enc);
    const auto slices = encoding::decode_parities(model, enc);
    ParityMatrix p = rep.initial;
    for (std::size_t k = 0; k <= steps.size(); ++k) {
        if (k > 0) {
            for (const auto& g : steps[k - 1]) p.apply_cnot(g.control, g.target);
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.row(i) != slices[k][i]) {
                throw Error("decoded CNOTs disagree with parity variables at step " + std::to_string(k) + ", row " +
                            std::to_string(i));
            }
        }
    }
    if (p != rep.final) throw Error("decoded CNOTs do not reach the final parity");
    return place_rotations(rep, steps);
}

SynthesisResult synthesize(const SynthesisRequest& req) {
    const auto start = Clock::now();
    req.rep.validate();
    const PhasePolyRep rep = merge_terms(req.rep);
    const std::size_t n = rep.num_qubits();
    if (n > req.coupling.num_qubits()) throw ValidationError("coupling map has fewer qubits than the phase polynomial");

    std::vector<Qubit> used(n);
    std::iota(used.begin(), used.end(), Qubit{0});
    const CouplingMap cm = induced_coupling(req.coupling, used);

    const std::size_t lo = lower_bound(rep, req.mode);
    const std::size_t hi = req.k_max.value_or(default_k_max(rep));
    if (hi < lo) throw ValidationError("k_max " + std::to_string(hi) + " is below the lower bound " + std::to_string(lo));

    const auto deadline = sat::deadline_after(req.timeout_s);
    SynthesisResult result;

    auto timed_solve = [&](sat::Backend& backend, const encoding::Encoding& enc, SolveRecord rec) {
        const auto t0 = Clock::now();
        auto r = backend.solve(enc.instance, deadline);
        if (r.status != sat::SolveStatus::Timeout && deadline && Clock::now() > *deadline) r.status = sat::SolveStatus::Timeout;
        rec.status = r.status;
        rec.seconds = seconds_since(t0);
        result.trail.push_back(rec);
        return r;
    };

    // Phase 1: smallest K with a model.
    std::optional<encoding::Encoding> enc;
    std::unique_ptr<sat::Backend> backend;
    sat::SatModel model;
    for (std::size_t k = lo; k <= hi; ++k) {
        auto candidate = encoding::encode_common(rep.initial, rep.final, rep.table.terms(),
                                                 encoding::EncodingConfig::for_map(req.mode, k, cm));
        if (req.mode == Mode::CnotOptimal) {
            encoding::add_cnot_mode(candidate);
        } else {
            encoding::add_depth_mode(candidate);
        }
        auto solver = req.backend();
        const auto r = timed_solve(*solver, candidate, {SolveRecord::Stage::Primary, k, std::nullopt});
        if (r.status == sat::SolveStatus::Timeout) {
            throw TimeoutError("time budget exhausted at K=" + std::to_string(k) + " before any solution");
        }
        if (r.sat()) {
            if (req.on_optimal_instance) req.on_optimal_instance(candidate.instance, k);
            enc = std::move(candidate);
            backend = std::move(solver);
            model = r.model;
            break;
        }
    }
    if (!enc) throw NoSolutionError("no circuit with K <= " + std::to_string(hi));

    // Phase 2: push the secondary metric down on the same growing instance.
    if (req.doubly && enc->config.steps > 0) {
        if (req.mode == Mode::CnotOptimal) {
            encoding::add_layer_assignment(*enc);
            const auto r = timed_solve(*backend, *enc, {SolveRecord::Stage::Descent, enc->config.steps, std::nullopt});
            if (r.sat()) {
                model = r.model;
                for (;;) {
                    const std::size_t depth = model_depth(model, *enc);
                    if (depth == 0) break;
                    encoding::add_depth_limit(*enc, depth - 1);
                    const auto next = timed_solve(*backend, *enc, {SolveRecord::Stage::Descent, enc->config.steps, depth - 1});
                    if (next.status == sat::SolveStatus::Timeout) {
                        result.optimal = false;
                        break;
                    }
                    if (!next.sat()) break;
                    model = next.model;
                }
            } else if (r.status == sat::SolveStatus::Timeout) {
                result.optimal = false;
            } else {
                throw Error("layer assignment made a satisfiable instance unsatisfiable");
            }
        } else {
            for (;;) {
                const std::size_t count = model_cnots(model, *enc);
                if (count == 0) break;
                encoding::add_cnot_budget(*enc, count - 1);
                const auto next = timed_solve(*backend, *enc, {SolveRecord::Stage::Descent, enc->config.steps, count - 1});
                if (next.status == sat::SolveStatus::Timeout) {
                    result.optimal = false;
                    break;
                }
                if (!next.sat()) break;
                model = next.model;
            }
        }
    }

    result.circuit = decode_circuit(model, *enc, rep);
    result.steps = encoding::decode_steps(model, *enc);
    if (req.mode == Mode::DepthOptimal) {
        for (std::size_t k = 0; k < result.steps.size(); ++k) result.layers.insert(result.layers.end(), result.steps[k].size(), k);
    } else if (enc->has_layers) {
        result.layers = encoding::decode_layers(model, *enc);
    } else {
        result.layers = cnot_layers(result.circuit);
    }
    result.cnot_count = cnot_count(result.circuit);
    result.cnot_depth = cnot_depth(result.circuit);
    result.solve_time_s = seconds_since(start);
    return result;
}

} // namespace hopps
