#include "hopps/encoder.hpp"

#include <stdexcept>

#include "hopps/error.hpp"

namespace hopps {

const char* to_string(Mode m) { return m == Mode::CnotOptimal ? "cnot" : "depth"; }

Mode parse_mode(const std::string& text) {
    if (text == "cnot") return Mode::CnotOptimal;
    if (text == "depth") return Mode::DepthOptimal;
    throw ValidationError("unknown mode '" + text + "' (expected cnot or depth)");
}

} // namespace hopps

namespace hopps::encoding {

using sat::Lit;

namespace {

int as_int(std::size_t x) { return static_cast<int>(x); }

// Literal asserting that variable v has the given bit value.
Lit bit_lit(int v, bool value) { return value ? Lit::pos(v) : Lit::neg(v); }

} // namespace

EncodingConfig EncodingConfig::for_map(Mode mode, std::size_t steps, const CouplingMap& cm) {
    return EncodingConfig{mode, steps, cm.num_qubits(), cm.directed_edges()};
}

Encoding encode_common(const ParityMatrix& initial, const ParityMatrix& final, std::span<const BitVector> terms,
                       const EncodingConfig& config) {
    const std::size_t n = config.num_qubits;
    const std::size_t steps = config.steps;
    const auto& edges = config.directed_edges;
    if (initial.size() != n || final.size() != n) throw ValidationError("parity matrix size does not match qubit count");
    for (const auto& e : edges) {
        if (e.control >= n || e.target >= n || e.control == e.target) throw ValidationError("bad directed edge");
    }
    for (const auto& t : terms) {
        if (t.size() != n) throw ValidationError("term length does not match qubit count");
        if (t.none()) throw ValidationError("term parity must be nonzero");
    }

    Encoding enc;
    enc.config = config;
    auto& inst = enc.instance;
    auto& lay = enc.layout;

    lay.parity.resize(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        lay.parity[k].assign(n, std::vector<int>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) lay.parity[k][i][j] = inst.new_named_var("P", {as_int(k), as_int(i), as_int(j)});
        }
    }
    lay.cnot.assign(steps, std::vector<int>(edges.size()));
    for (std::size_t k = 0; k < steps; ++k) {
        for (std::size_t e = 0; e < edges.size(); ++e) lay.cnot[k][e] = inst.new_named_var("cnot", {as_int(k), as_int(e)});
    }

    // Boundary slices.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inst.add_clause({bit_lit(lay.parity[0][i][j], initial.get(i, j))});
            inst.add_clause({bit_lit(lay.parity[steps][i][j], final.get(i, j))});
        }
    }

    // Every term equals some row of some slice.
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::vector<Lit> any;
        for (std::size_t k = 0; k <= steps; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                const int m = inst.new_named_var("match", {as_int(t), as_int(k), as_int(i)});
                for (std::size_t j = 0; j < n; ++j) inst.add_clause({Lit::neg(m), bit_lit(lay.parity[k][i][j], terms[t].get(j))});
                any.push_back(Lit::pos(m));
            }
        }
        inst.add_clause(any);
    }

    // Transitions: a selected CNOT XORs the control row into the target row.
    for (std::size_t k = 0; k < steps; ++k) {
        const auto& now = lay.parity[k];
        const auto& next = lay.parity[k + 1];
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const Lit g = Lit::pos(lay.cnot[k][e]);
            const std::size_t c = edges[e].control;
            const std::size_t tg = edges[e].target;
            for (std::size_t j = 0; j < n; ++j) {
                const Lit ctl = Lit::pos(now[c][j]);
                const Lit before = Lit::pos(now[tg][j]);
                const Lit after = Lit::pos(next[tg][j]);
                // cnot & ctl => after != before
                inst.add_clause({~g, ~ctl, after, before});
                inst.add_clause({~g, ~ctl, ~after, ~before});
                // cnot & !ctl => after == before
                inst.add_clause({~g, ctl, ~after, before});
                inst.add_clause({~g, ctl, after, ~before});
            }
        }
        // A row no selected CNOT targets keeps its value.
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Lit> guard;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].target == i) guard.push_back(Lit::pos(lay.cnot[k][e]));
            }
            for (std::size_t j = 0; j < n; ++j) {
                auto keep_a = guard;
                keep_a.push_back(Lit::neg(next[i][j]));
                keep_a.push_back(Lit::pos(now[i][j]));
                inst.add_clause(keep_a);
                auto keep_b = guard;
                keep_b.push_back(Lit::pos(next[i][j]));
                keep_b.push_back(Lit::neg(now[i][j]));
                inst.add_clause(keep_b);
            }
        }
    }
    return enc;
}

void add_cnot_mode(Encoding& enc) {
    if (enc.config.mode != Mode::CnotOptimal) throw std::logic_error("add_cnot_mode on a depth-mode encoding");
    for (const auto& step : enc.layout.cnot) {
        std::vector<Lit> lits;
        for (int v : step) lits.push_back(Lit::pos(v));
        sat::exactly_one(enc.instance, lits);
    }
    enc.has_mode = true;
}

void add_depth_mode(Encoding& enc) {
    if (enc.config.mode != Mode::DepthOptimal) throw std::logic_error("add_depth_mode on a CNOT-mode encoding");
    const auto& edges = enc.config.directed_edges;
    for (const auto& step : enc.layout.cnot) {
        std::vector<Lit> lits;
        for (int v : step) lits.push_back(Lit::pos(v));
        sat::at_least_k(enc.instance, lits, 1);
        for (std::size_t q = 0; q < enc.config.num_qubits; ++q) {
            std::vector<Lit> on_q;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].touches(q)) on_q.push_back(Lit::pos(step[e]));
            }
            sat::at_most_k(enc.instance, on_q, 1);
        }
    }
    enc.has_mode = true;
}

void add_layer_assignment(Encoding& enc) {
    if (enc.config.mode != Mode::CnotOptimal) throw std::logic_error("layer assignment requires a CNOT-mode encoding");
    if (enc.has_layers) throw std::logic_error("layer assignment already present");
    auto& inst = enc.instance;
    auto& lay = enc.layout;
    const std::size_t steps = enc.config.steps;
    const auto& edges = enc.config.directed_edges;

    lay.layer.assign(steps, std::vector<int>(steps));
    for (std::size_t k = 0; k < steps; ++k) {
        for (std::size_t l = 0; l < steps; ++l) lay.layer[k][l] = inst.new_named_var("D", {as_int(k), as_int(l)});
    }
    lay.layer_edge.assign(steps, std::vector<int>(edges.size()));
    for (std::size_t l = 0; l < steps; ++l) {
        for (std::size_t e = 0; e < edges.size(); ++e) lay.layer_edge[l][e] = inst.new_named_var("L", {as_int(l), as_int(e)});
    }
    const auto& D = lay.layer;

    // Each gate sits in exactly one layer.
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<Lit> row;
        for (int v : D[k]) row.push_back(Lit::pos(v));
        sat::exactly_one(inst, row);
    }

    for (std::size_t k = 0; k + 1 < steps; ++k) {
        for (std::size_t l = 0; l < steps; ++l) {
            // Continuity: after leaving layer l, no later gate returns to it.
            for (std::size_t i = 2; k + i < steps; ++i) {
                inst.add_clause({Lit::neg(D[k][l]), Lit::pos(D[k + 1][l]), Lit::neg(D[k + i][l])});
            }
            // Monotone: later gates never use a lower layer.
            for (std::size_t i = 1; k + i < steps; ++i) {
                for (std::size_t lower = 0; lower < l; ++lower) inst.add_clause({Lit::neg(D[k][l]), Lit::neg(D[k + i][lower])});
            }
        }
    }

    // L[l][e] <=> OR_k (D[k][l] & cnot[k][e]), through y[l][e][k] <=> D[k][l] & cnot[k][e].
    for (std::size_t l = 0; l < steps; ++l) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const Lit L = Lit::pos(lay.layer_edge[l][e]);
            std::vector<Lit> support{~L};
            std::vector<Lit> ys;
            for (std::size_t k = 0; k < steps; ++k) {
                const Lit y = Lit::pos(inst.new_named_var("LD", {as_int(l), as_int(e), as_int(k)}));
                const Lit d = Lit::pos(D[k][l]);
                const Lit g = Lit::pos(lay.cnot[k][e]);
                inst.add_clause({~y, d});
                inst.add_clause({~y, g});
                inst.add_clause({~d, ~g, y});
                inst.add_clause({~y, L});
                support.push_back(y);
                ys.push_back(y);
            }
            inst.add_clause(support);
            // L collapses repeats of one directed edge, so bound them directly.
            sat::at_most_k(inst, ys, 1);
        }
    }

    // Qubit-disjoint layers.
    for (std::size_t l = 0; l < steps; ++l) {
        for (std::size_t q = 0; q < enc.config.num_qubits; ++q) {
            std::vector<Lit> on_q;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].touches(q)) on_q.push_back(Lit::pos(lay.layer_edge[l][e]));
            }
            sat::at_most_k(inst, on_q, 1);
        }
    }
    enc.has_layers = true;
}

void add_depth_limit(Encoding& enc, std::size_t d) {
    if (!enc.has_layers) throw std::logic_error("depth limit requires a layer assignment");
    for (const auto& row : enc.layout.layer) {
        for (std::size_t l = d; l < row.size(); ++l) enc.instance.add_clause({Lit::neg(row[l])});
    }
}

void add_cnot_budget(Encoding& enc, std::size_t n_c) {
    if (enc.config.mode != Mode::DepthOptimal) throw std::logic_error("CNOT budget requires a depth-mode encoding");
    std::vector<Lit> all;
    for (const auto& step : enc.layout.cnot) {
        for (int v : step) all.push_back(Lit::pos(v));
    }
    sat::at_most_k(enc.instance, all, n_c);
}

std::vector<std::vector<Cnot>> decode_steps(const sat::SatModel& model, const Encoding& enc) {
    std::vector<std::vector<Cnot>> steps(enc.config.steps);
    for (std::size_t k = 0; k < enc.config.steps; ++k) {
        for (std::size_t e = 0; e < enc.config.directed_edges.size(); ++e) {
            if (model.value(enc.layout.cnot[k][e])) {
                steps[k].push_back({enc.config.directed_edges[e].control, enc.config.directed_edges[e].target});
            }
        }
    }
    return steps;
}

std::vector<std::vector<BitVector>> decode_parities(const sat::SatModel& model, const Encoding& enc) {
    const std::size_t n = enc.config.num_qubits;
    std::vector<std::vector<BitVector>> out(enc.config.steps + 1, std::vector<BitVector>(n, BitVector(n)));
    for (std::size_t k = 0; k <= enc.config.steps; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out[k][i].set(j, model.value(enc.layout.parity[k][i][j]));
        }
    }
    return out;
}

std::vector<std::size_t> decode_layers(const sat::SatModel& model, const Encoding& enc) {
    if (!enc.has_layers) throw std::logic_error("encoding has no layer assignment");
    std::vector<std::size_t> layers(enc.config.steps, 0);
    for (std::size_t k = 0; k < enc.config.steps; ++k) {
        for (std::size_t l = 0; l < enc.config.steps; ++l) {
            if (model.value(enc.layout.layer[k][l])) layers[k] = l;
        }
    }
    return layers;
}

} // namespace hopps::encoding
