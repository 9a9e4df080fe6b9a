#include "generators.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hopps::testing {

namespace {

Angle random_angle(Rng& rng) {
    const int k = std::uniform_int_distribution<int>(1, 7)(rng);
    return Angle(k * std::numbers::pi / 8.0);
}

Cnot random_cnot(const CouplingMap& cm, Rng& rng) {
    const auto edges = cm.directed_edges();
    const auto& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
    return {e.control, e.target};
}

} // namespace

Circuit random_phase_circuit(const CouplingMap& cm, std::size_t num_gates, Rng& rng, double rz_share) {
    Circuit c(cm.num_qubits());
    std::bernoulli_distribution pick_rz(cm.edges().empty() ? 1.0 : rz_share);
    std::uniform_int_distribution<std::size_t> qubit(0, cm.num_qubits() - 1);
    for (std::size_t i = 0; i < num_gates; ++i) {
        if (pick_rz(rng)) {
            c.rz(random_angle(rng), qubit(rng));
        } else {
            c.add(random_cnot(cm, rng));
        }
    }
    return c;
}

Circuit random_mixed_circuit(const CouplingMap& cm, std::size_t num_gates, Rng& rng) {
    Circuit c(cm.num_qubits());
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<std::size_t> qubit(0, cm.num_qubits() - 1);
    for (std::size_t i = 0; i < num_gates; ++i) {
        const int k = kind(rng);
        if (k < 5 && !cm.edges().empty()) {
            c.add(random_cnot(cm, rng));
        } else if (k < 8) {
            c.rz(random_angle(rng), qubit(rng));
        } else if (k == 8 || cm.edges().empty()) {
            c.opaque("h", {qubit(rng)});
        } else {
            const auto e = random_cnot(cm, rng);
            c.opaque("cz", {e.control, e.target});
        }
    }
    return c;
}

PhasePolyRep random_rep(const CouplingMap& cm, std::size_t num_terms, Rng& rng) {
    const std::size_t n = cm.num_qubits();
    if (num_terms + 1 > (std::size_t{1} << n)) throw std::invalid_argument("too many distinct terms requested");
    PhasePolyRep rep{ParityMatrix::identity(n), ParityMatrix::identity(n), ParityTable(n)};
    if (!cm.edges().empty()) {
        const std::size_t steps = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
        for (std::size_t i = 0; i < steps; ++i) {
            const auto g = random_cnot(cm, rng);
            rep.final.apply_cnot(g.control, g.target);
        }
    }
    std::set<BitVector> seen;
    std::uniform_int_distribution<int> bit(0, 1);
    while (seen.size() < num_terms) {
        BitVector t(n);
        for (std::size_t j = 0; j < n; ++j) t.set(j, bit(rng) == 1);
        if (t.none() || !seen.insert(t).second) continue;
        rep.table.add(t, random_angle(rng));
    }
    return rep;
}

sat::SatInstance random_cnf(int num_vars, std::size_t num_clauses, std::size_t max_width, Rng& rng) {
    sat::SatInstance inst;
    for (int v = 0; v < num_vars; ++v) (void)inst.new_var();
    std::uniform_int_distribution<int> var(1, num_vars);
    std::uniform_int_distribution<std::size_t> width(1, max_width);
    std::bernoulli_distribution sign(0.5);
    for (std::size_t c = 0; c < num_clauses; ++c) {
        sat::Clause clause;
        const std::size_t w = width(rng);
        for (std::size_t i = 0; i < w; ++i) clause.push_back(sign(rng) ? sat::Lit::pos(var(rng)) : sat::Lit::neg(var(rng)));
        inst.add_clause(clause);
    }
    return inst;
}

namespace {

bool satisfies(const sat::SatInstance& inst, const std::vector<bool>& values) {
    for (const auto& clause : inst.clauses()) {
        bool ok = false;
        for (const auto l : clause) {
            if (values[static_cast<std::size_t>(l.var)] != l.negated) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

} // namespace

bool brute_force_sat(const sat::SatInstance& inst) {
    const int n = inst.num_vars();
    if (n > 24) throw std::invalid_argument("too many variables to enumerate");
    std::vector<bool> values(static_cast<std::size_t>(n) + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (int v = 1; v <= n; ++v) values[static_cast<std::size_t>(v)] = ((mask >> (v - 1)) & 1U) != 0;
        if (satisfies(inst, values)) return true;
    }
    return false;
}

namespace {

// Plain DPLL with clause-scanning unit propagation; deliberately unrelated to the CDCL code.
bool dpll(const sat::SatInstance& inst, std::vector<int>& value) {
    for (;;) {
        bool changed = false;
        for (const auto& clause : inst.clauses()) {
            int unassigned = 0;
            sat::Lit last{};
            bool satisfied = false;
            for (const auto l : clause) {
                const int v = value[static_cast<std::size_t>(l.var)];
                if (v < 0) {
                    ++unassigned;
                    last = l;
                } else if ((v == 1) != l.negated) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                value[static_cast<std::size_t>(last.var)] = last.negated ? 0 : 1;
                changed = true;
            }
        }
        if (!changed) break;
    }
    const auto it = std::find(value.begin() + 1, value.end(), -1);
    if (it == value.end()) return true;
    for (const int guess : {0, 1}) {
        auto copy = value;
        copy[static_cast<std::size_t>(it - value.begin())] = guess;
        if (dpll(inst, copy)) return true;
    }
    return false;
}

} // namespace

std::vector<std::vector<bool>> projected_models(const sat::SatInstance& inst, int num_vars) {
    if (num_vars > 16) throw std::invalid_argument("too many projected variables to enumerate");
    std::vector<std::vector<bool>> out;
    for (std::uint32_t mask = 0; mask < (1U << num_vars); ++mask) {
        std::vector<int> value(static_cast<std::size_t>(inst.num_vars()) + 1, -1);
        std::vector<bool> assignment(static_cast<std::size_t>(num_vars));
        for (int v = 1; v <= num_vars; ++v) {
            assignment[static_cast<std::size_t>(v - 1)] = ((mask >> (v - 1)) & 1U) != 0;
            value[static_cast<std::size_t>(v)] = assignment[static_cast<std::size_t>(v - 1)] ? 1 : 0;
        }
        if (dpll(inst, value)) out.push_back(std::move(assignment));
    }
    return out;
}

CouplingMap topology(const std::string& name, std::size_t n) {
    if (name == "line") return CouplingMap::line(n);
    if (name == "ring") return n >= 3 ? CouplingMap::ring(n) : CouplingMap::line(n);
    if (name == "complete") return CouplingMap::complete(n);
    throw std::invalid_argument("unknown topology " + name);
}

Circuit swap_zz_circuit() {
    Circuit c(3);
    c.cnot(1, 2).rz(Angle::symbol("theta1"), 2).cnot(1, 2);
    c.cnot(0, 1).rz(Angle::symbol("theta2"), 1).cnot(0, 1);
    c.cnot(1, 2).cnot(2, 1).cnot(1, 2);
    c.cnot(0, 1).rz(Angle::symbol("theta3"), 1).cnot(0, 1);
    return c;
}

PhasePolyRep swap_zz_rep() {
    PhasePolyRep rep{ParityMatrix::identity(3), ParityMatrix::from_bits({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), ParityTable(3)};
    rep.table.add(BitVector{0, 1, 1}, Angle::symbol("theta1"));
    rep.table.add(BitVector{1, 1, 0}, Angle::symbol("theta2"));
    rep.table.add(BitVector{1, 0, 1}, Angle::symbol("theta3"));
    return rep;
}

} // namespace hopps::testing
