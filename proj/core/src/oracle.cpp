#include "hopps/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "hopps/error.hpp"

namespace hopps {

namespace {

constexpr std::size_t kMaxQubits = 8;
constexpr std::size_t kMaxTerms = 32;

// Row i of the parity lives in byte i.
using Packed = std::uint64_t;

struct State {
    Packed parity = 0;
    std::uint32_t matched = 0;
    friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        return std::hash<std::uint64_t>{}(s.parity * 0x9e3779b97f4a7c15ULL ^ s.matched);
    }
};

struct Node {
    State state;
    std::size_t level = 0;
    // (predecessor node, move index)
    std::vector<std::pair<std::size_t, std::size_t>> preds;
};

Packed pack(const ParityMatrix& m) {
    Packed p = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Packed row = 0;
        for (std::size_t j = 0; j < m.size(); ++j) row |= static_cast<Packed>(m.get(i, j)) << j;
        p |= row << (8 * i);
    }
    return p;
}

std::uint8_t pack_term(const BitVector& t) {
    std::uint8_t v = 0;
    for (std::size_t j = 0; j < t.size(); ++j) v |= static_cast<std::uint8_t>(t.get(j) << j);
    return v;
}

std::uint8_t row_of(Packed p, std::size_t i) { return static_cast<std::uint8_t>(p >> (8 * i)); }

Packed apply(Packed p, const Cnot& g) { return p ^ (static_cast<Packed>(row_of(p, g.control)) << (8 * g.target)); }

class Search {
public:
    Search(const PhasePolyRep& rep, std::vector<std::vector<Cnot>> moves, const OracleLimits& limits)
        : rep_(merge_terms(rep)), moves_(std::move(moves)), limits_(limits) {
        n_ = rep_.num_qubits();
        for (const auto& t : rep_.table.terms()) {
            const auto v = pack_term(t);
            if (std::find(terms_.begin(), terms_.end(), v) == terms_.end()) terms_.push_back(v);
        }
        if (terms_.size() > kMaxTerms) throw ValidationError("oracle supports at most 32 distinct terms");
        full_ = terms_.size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << terms_.size()) - 1;
    }

    OracleResult run() {
        const State start{pack(rep_.initial), matches(pack(rep_.initial), 0)};
        const State goal{pack(rep_.final), full_};
        nodes_.push_back({start, 0, {}});
        index_.emplace(start, 0);
        std::vector<std::size_t> frontier{0};
        std::size_t level = 0;
        while (!index_.contains(goal)) {
            if (frontier.empty()) throw NoSolutionError("final parity and terms are unreachable on this coupling map");
            std::vector<std::size_t> next;
            for (const std::size_t id : frontier) {
                const State s = nodes_[id].state;
                for (std::size_t m = 0; m < moves_.size(); ++m) {
                    Packed p = s.parity;
                    for (const auto& g : moves_[m]) p = apply(p, g);
                    const State t{p, matches(p, s.matched)};
                    auto it = index_.find(t);
                    if (it == index_.end()) {
                        if (nodes_.size() >= limits_.max_nodes) throw Error("oracle node cap exceeded");
                        it = index_.emplace(t, nodes_.size()).first;
                        nodes_.push_back({t, level + 1, {}});
                        next.push_back(it->second);
                    }
                    if (nodes_[it->second].level == level + 1) nodes_[it->second].preds.emplace_back(id, m);
                }
            }
            frontier = std::move(next);
            ++level;
        }

        OracleResult out;
        out.value = level;
        std::vector<std::size_t> path;
        collect(index_.at(goal), path, out);
        for (const auto& steps : out.solutions) out.circuits.push_back(place_rotations(rep_, steps));
        return out;
    }

private:
    std::uint32_t matches(Packed p, std::uint32_t mask) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const auto row = row_of(p, i);
            for (std::size_t t = 0; t < terms_.size(); ++t) {
                if (terms_[t] == row) mask |= std::uint32_t{1} << t;
            }
        }
        return mask;
    }

    // Walks predecessor links back to the root; `path` holds move indices goal-first.
    void collect(std::size_t id, std::vector<std::size_t>& path, OracleResult& out) const {
        if (id == 0) {
            if (out.solutions.size() >= limits_.max_solutions) throw Error("oracle solution cap exceeded");
            std::vector<std::vector<Cnot>> steps;
            for (auto it = path.rbegin(); it != path.rend(); ++it) steps.push_back(moves_[*it]);
            out.solutions.push_back(std::move(steps));
            return;
        }
        for (const auto& [pred, move] : nodes_[id].preds) {
            path.push_back(move);
            collect(pred, path, out);
            path.pop_back();
        }
    }

    PhasePolyRep rep_;
    std::vector<std::vector<Cnot>> moves_;
    OracleLimits limits_;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> terms_;
    std::uint32_t full_ = 0;
    std::vector<Node> nodes_;
    std::unordered_map<State, std::size_t, StateHash> index_;
};

std::vector<DirectedEdge> used_edges(const PhasePolyRep& rep, const CouplingMap& cm) {
    const std::size_t n = rep.num_qubits();
    if (n > kMaxQubits) throw ValidationError("oracle supports at most 8 qubits");
    if (n > cm.num_qubits()) throw ValidationError("coupling map has fewer qubits than the phase polynomial");
    std::vector<Qubit> used(n);
    std::iota(used.begin(), used.end(), Qubit{0});
    return induced_coupling(cm, used).directed_edges();
}

void disjoint_subsets(const std::vector<DirectedEdge>& edges, std::size_t from, std::uint32_t busy, std::vector<Cnot>& cur,
                      std::vector<std::vector<Cnot>>& out) {
    for (std::size_t e = from; e < edges.size(); ++e) {
        const std::uint32_t bits = (1U << edges[e].control) | (1U << edges[e].target);
        if ((busy & bits) != 0) continue;
        cur.push_back({edges[e].control, edges[e].target});
        out.push_back(cur);
        disjoint_subsets(edges, e + 1, busy | bits, cur, out);
        cur.pop_back();
    }
}

} // namespace

OracleResult oracle_min_count(const PhasePolyRep& rep, const CouplingMap& cm, const OracleLimits& limits) {
    rep.validate();
    std::vector<std::vector<Cnot>> moves;
    for (const auto& e : used_edges(rep, cm)) moves.push_back({{e.control, e.target}});
    return Search(rep, std::move(moves), limits).run();
}

OracleResult oracle_min_depth(const PhasePolyRep& rep, const CouplingMap& cm, const OracleLimits& limits) {
    rep.validate();
    std::vector<std::vector<Cnot>> moves;
    std::vector<Cnot> cur;
    disjoint_subsets(used_edges(rep, cm), 0, 0, cur, moves);
    return Search(rep, std::move(moves), limits).run();
}

} // namespace hopps
