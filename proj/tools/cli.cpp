#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "hopps/blockwise.hpp"
#include "hopps/error.hpp"
#include "hopps/json_io.hpp"
#include "hopps/oracle.hpp"
#include "hopps/peephole.hpp"
#include "hopps/qasm.hpp"
#include "hopps/synthesizer.hpp"

namespace hopps::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::string second;
    std::string output;
    std::string coupling_map;
    std::string mode = "cnot";
    bool doubly = false;
    std::optional<std::size_t> kmax;
    std::optional<double> timeout;
    std::size_t block_qubits = 3;
    std::size_t block_depth = 20;
    std::size_t iters_full = 5;
    std::size_t iters_sample = 5;
    double sample_fraction = 0.5;
    std::size_t jobs = 1;
    std::uint64_t seed = 0;
    std::string dimacs_out;
    std::string trace_out;
    std::string baseline;
    std::string log_level = "warn";
};

CouplingMap load_coupling(const Options& o, std::size_t num_qubits) {
    if (o.coupling_map.empty()) return CouplingMap::complete(num_qubits);
    return coupling_map_from_json(read_text_file(o.coupling_map));
}

sat::BackendFactory solver_from_env() {
    const char* spec = std::getenv("HOPPS_SOLVER");
    return sat::backend_from_spec(spec == nullptr ? "" : spec);
}

double timeout_or_inf(const Options& o) { return o.timeout.value_or(std::numeric_limits<double>::infinity()); }

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
    } else {
        write_text_file(o.output, text);
    }
}

ResynthOptions resynth_options(const Options& o) {
    ResynthOptions r;
    r.mode = parse_mode(o.mode);
    r.doubly = o.doubly;
    r.timeout_s = timeout_or_inf(o);
    r.k_max = o.kmax;
    r.backend = solver_from_env();
    return r;
}

int cmd_extract(const Options& o, std::ostream& out) {
    const Circuit c = read_qasm_file(o.input);
    emit(o, out, rep_to_json(extract_rep(c)) + "\n");
    return kOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
    SynthesisRequest req;
    req.rep = rep_from_json(read_text_file(o.input));
    req.coupling = load_coupling(o, req.rep.num_qubits());
    req.mode = parse_mode(o.mode);
    req.doubly = o.doubly;
    req.k_max = o.kmax;
    req.timeout_s = timeout_or_inf(o);
    req.backend = solver_from_env();
    if (!o.dimacs_out.empty()) {
        req.on_optimal_instance = [&](const sat::SatInstance& inst, std::size_t) { write_text_file(o.dimacs_out, export_dimacs(inst)); };
    }
    const auto res = synthesize(req);
    spdlog::info("synthesized {} CNOTs, depth {}, in {:.3f} s over {} solver calls", res.cnot_count, res.cnot_depth,
                 res.solve_time_s, res.trail.size());
    json report{{"cnot_count", res.cnot_count},
                {"cnot_depth", res.cnot_depth},
                {"solve_time_s", res.solve_time_s},
                {"optimal", res.optimal}};
    const std::string qasm = to_qasm(res.circuit);
    if (o.output.empty()) {
        report["circuit"] = qasm;
    } else {
        write_text_file(o.output, qasm);
    }
    out << report.dump() << '\n';
    return kOk;
}

json metrics_json(const Circuit& c) { return {{"cnot_count", cnot_count(c)}, {"cnot_depth", cnot_depth(c)}}; }

int cmd_peephole(const Options& o, std::ostream& out) {
    const Circuit c = read_qasm_file(o.input);
    const CouplingMap cm = load_coupling(o, c.num_qubits());
    if (!validate_topology(c, cm)) throw ValidationError("input circuit does not respect the coupling map");
    const auto report = peephole_pass(c, cm, resynth_options(o), o.jobs);
    for (std::size_t r = 0; r < report.rounds.size(); ++r) {
        const auto& round = report.rounds[r];
        for (std::size_t i = 0; i < round.blocks.size(); ++i) {
            spdlog::info("round {} block {} on {} qubits: {}", r, i, round.blocks[i].qubits.size(), to_string(round.results[i].outcome));
        }
        spdlog::info("round {} {}", r, round.accepted ? "accepted" : "dropped");
    }
    json j{{"before", metrics_json(c)},
           {"after", metrics_json(report.circuit)},
           {"blocks", report.rounds.front().blocks.size()},
           {"rounds", report.rounds.size()}};
    if (o.output.empty()) {
        j["circuit"] = to_qasm(report.circuit);
    } else {
        write_text_file(o.output, to_qasm(report.circuit));
    }
    out << j.dump() << '\n';
    return kOk;
}

int cmd_blockwise(const Options& o, std::ostream& out) {
    const Circuit c = read_qasm_file(o.input);
    const CouplingMap cm = load_coupling(o, c.num_qubits());
    BlockwiseConfig cfg;
    cfg.max_block_qubits = o.block_qubits;
    cfg.max_block_depth = o.block_depth;
    cfg.iters_full = o.iters_full;
    cfg.iters_sample = o.iters_sample;
    cfg.sample_fraction = o.sample_fraction;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.resynth = resynth_options(o);
    if (!o.timeout) cfg.resynth.timeout_s = 60.0;
    const auto res = iterate_optimize(c, cm, cfg);
    if (!o.trace_out.empty()) {
        const bool csv = o.trace_out.size() >= 4 && o.trace_out.ends_with(".csv");
        write_text_file(o.trace_out, csv ? res.trace.to_csv() : res.trace.to_jsonl());
    }
    json j{{"before", metrics_json(c)}, {"after", metrics_json(res.circuit)}, {"iterations", res.trace.records.size() - 1}};
    if (o.output.empty()) {
        j["circuit"] = to_qasm(res.circuit);
    } else {
        write_text_file(o.output, to_qasm(res.circuit));
    }
    out << j.dump() << '\n';
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const PhasePolyRep rep = rep_from_json(read_text_file(o.input));
    const CouplingMap cm = load_coupling(o, rep.num_qubits());
    const Mode mode = parse_mode(o.mode);
    const auto res = mode == Mode::CnotOptimal ? oracle_min_count(rep, cm) : oracle_min_depth(rep, cm);
    std::size_t secondary = std::numeric_limits<std::size_t>::max();
    for (const auto& c : res.circuits) secondary = std::min(secondary, mode == Mode::CnotOptimal ? cnot_depth(c) : cnot_count(c));
    json j{{"mode", to_string(mode)}, {"optimal_circuits", res.circuits.size()}};
    if (mode == Mode::CnotOptimal) {
        j["cnot_count"] = res.value;
        j["min_cnot_depth_among_optimal"] = secondary;
    } else {
        j["cnot_depth"] = res.value;
        j["min_cnot_count_among_optimal"] = secondary;
    }
    out << j.dump() << '\n';
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Circuit a = read_qasm_file(o.input);
    const Circuit b = read_qasm_file(o.second);
    if (a.num_qubits() != b.num_qubits()) throw ValidationError("circuits have different qubit counts");
    const bool same = equivalent(a, b);
    out << json{{"equivalent", same}}.dump() << '\n';
    return same ? kOk : kInvalid;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    const Circuit c = read_qasm_file(o.input);
    json j = metrics_json(c);
    if (!o.baseline.empty()) {
        const Circuit base = read_qasm_file(o.baseline);
        j["baseline"] = metrics_json(base);
        j["cnot_count_improvement"] = improvement_ratio(static_cast<double>(cnot_count(base)), static_cast<double>(cnot_count(c)));
        j["cnot_depth_improvement"] = improvement_ratio(static_cast<double>(cnot_depth(base)), static_cast<double>(cnot_depth(c)));
    }
    out << j.dump() << '\n';
    return kOk;
}

void add_solver_flags(CLI::App* sub, Options& o) {
    sub->add_option("--coupling-map", o.coupling_map, "Coupling-map JSON (default: complete graph)");
    sub->add_option("--mode", o.mode, "Primary target")->check(CLI::IsMember({"cnot", "depth"}));
    sub->add_flag("--doubly", o.doubly, "Also minimize the secondary metric");
    sub->add_option("--kmax", o.kmax, "Largest step count to try");
    sub->add_option("--timeout", o.timeout, "Seconds per synthesis call");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Optimal CNOT-count and CNOT-depth synthesis of phase-polynomial circuits", "hopps"};
    app.require_subcommand(1);
    app.add_option("--log-level", o.log_level, "trace, debug, info, warn, error or off");

    auto* extract = app.add_subcommand("extract", "Phase polynomial of a {CNOT, Rz} QASM circuit as JSON");
    extract->add_option("input", o.input)->required();
    extract->add_option("-o,--output", o.output);

    auto* synth = app.add_subcommand("synth", "Synthesize an optimal circuit from phase-polynomial JSON");
    synth->add_option("input", o.input)->required();
    synth->add_option("-o,--output", o.output, "QASM output (default: embedded in the JSON report)");
    synth->add_option("--dimacs-out", o.dimacs_out, "Write the optimal primary instance as DIMACS");
    add_solver_flags(synth, o);

    auto* peephole = app.add_subcommand("peephole", "Resynthesize every {CNOT, Rz} block of a mapped circuit");
    peephole->add_option("input", o.input)->required();
    peephole->add_option("-o,--output", o.output);
    peephole->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    add_solver_flags(peephole, o);

    auto* blockwise = app.add_subcommand("blockwise", "Iterative partition-resynthesize-splice optimization");
    blockwise->add_option("input", o.input)->required();
    blockwise->add_option("-o,--output", o.output);
    blockwise->add_option("--block-qubits", o.block_qubits)->check(CLI::PositiveNumber);
    blockwise->add_option("--block-depth", o.block_depth)->check(CLI::PositiveNumber);
    blockwise->add_option("--iters-full", o.iters_full);
    blockwise->add_option("--iters-sample", o.iters_sample);
    blockwise->add_option("--sample-fraction", o.sample_fraction)->check(CLI::Range(0.0, 1.0));
    blockwise->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    blockwise->add_option("--seed", o.seed);
    blockwise->add_option("--trace-out", o.trace_out, "Per-iteration trace (.csv for CSV, otherwise JSON lines)");
    add_solver_flags(blockwise, o);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum for a small phase-polynomial JSON");
    oracle->add_option("input", o.input)->required();
    oracle->add_option("--coupling-map", o.coupling_map);
    oracle->add_option("--mode", o.mode)->check(CLI::IsMember({"cnot", "depth"}));

    auto* verify = app.add_subcommand("verify", "Phase-polynomial equivalence of two QASM circuits");
    verify->add_option("a", o.input)->required();
    verify->add_option("b", o.second)->required();

    auto* metrics = app.add_subcommand("metrics", "CNOT count and depth of a QASM circuit");
    metrics->add_option("input", o.input)->required();
    metrics->add_option("--baseline", o.baseline, "Baseline QASM for improvement ratios");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (blockwise->parsed() && o.sample_fraction <= 0.0) {
        err << "error: --sample-fraction must be positive\n";
        return kUsage;
    }

    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("hopps", sink);
    logger->set_level(spdlog::level::from_str(o.log_level));
    logger->set_pattern("%l: %v");
    spdlog::set_default_logger(logger);

    try {
        if (extract->parsed()) return cmd_extract(o, out);
        if (synth->parsed()) return cmd_synth(o, out);
        if (peephole->parsed()) return cmd_peephole(o, out);
        if (blockwise->parsed()) return cmd_blockwise(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (metrics->parsed()) return cmd_metrics(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ", column " << e.column() << ")";
        err << '\n';
        return kInvalid;
    } catch (const NoSolutionError& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const TimeoutError& e) {
        err << "error: " << e.what() << '\n';
        return kTimeout;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kUsage;
}

} // namespace hopps::cli
