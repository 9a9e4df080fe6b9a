#include <algorithm>
#include <cassert>
#include <cstdint>

#include "hopps/sat.hpp"

namespace hopps::sat {

namespace {

// Internal literal: 2*v + sign over a 0-based variable index.
using ILit = int;
constexpr ILit make_lit(int v, bool negated) { return 2 * v + (negated ? 1 : 0); }
constexpr int lit_var(ILit l) { return l >> 1; }
constexpr ILit lit_neg(ILit l) { return l ^ 1; }

enum Value : std::int8_t { kFalse = 0, kTrue = 1, kUndef = 2 };

double luby(double y, int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1.0;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

} // namespace

struct CdclSolver::Impl {
    struct StoredClause {
        std::vector<ILit> lits;
        bool learnt = false;
        bool deleted = false;
        unsigned lbd = 0;
        double activity = 0.0;
    };
    struct Watch {
        int cref;
        ILit blocker;
    };

    // Problem state
    int num_vars = 0;
    std::size_t loaded_clauses = 0;
    bool ok = true;
    std::vector<StoredClause> clauses;
    std::vector<int> learnts;
    std::vector<std::vector<Watch>> watches;

    // Assignment
    std::vector<std::int8_t> assigns;
    std::vector<int> level;
    std::vector<int> reason;
    std::vector<ILit> trail;
    std::vector<std::size_t> trail_lim;
    std::size_t qhead = 0;

    // Heuristics
    std::vector<double> activity;
    double var_inc = 1.0;
    double cla_inc = 1.0;
    std::vector<std::int8_t> polarity;
    std::vector<int> heap;
    std::vector<int> heap_pos;
    std::size_t reduce_at = 2000;

    std::vector<std::int8_t> seen;
    Stats stats;

    // ---- heap ordered by activity (desc), ties by var index (asc) ----
    [[nodiscard]] bool before(int a, int b) const {
        return activity[a] > activity[b] || (activity[a] == activity[b] && a < b);
    }
    void heap_up(std::size_t i) {
        const int v = heap[i];
        while (i > 0) {
            const std::size_t p = (i - 1) / 2;
            if (!before(v, heap[p])) break;
            heap[i] = heap[p];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = p;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_down(std::size_t i) {
        const int v = heap[i];
        for (;;) {
            std::size_t c = 2 * i + 1;
            if (c >= heap.size()) break;
            if (c + 1 < heap.size() && before(heap[c + 1], heap[c])) ++c;
            if (!before(heap[c], v)) break;
            heap[i] = heap[c];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = c;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_insert(int v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_up(heap.size() - 1);
    }
    int heap_pop() {
        const int top = heap.front();
        heap_pos[top] = -1;
        const int last = heap.back();
        heap.pop_back();
        if (!heap.empty()) {
            heap[0] = last;
            heap_pos[last] = 0;
            heap_down(0);
        }
        return top;
    }

    [[nodiscard]] std::int8_t value(ILit l) const {
        const std::int8_t a = assigns[lit_var(l)];
        if (a == kUndef) return kUndef;
        return static_cast<std::int8_t>(a ^ (l & 1));
    }
    [[nodiscard]] int decision_level() const { return static_cast<int>(trail_lim.size()); }

    void grow_to(int n) {
        while (num_vars < n) {
            const int v = num_vars++;
            watches.emplace_back();
            watches.emplace_back();
            assigns.push_back(kUndef);
            level.push_back(0);
            reason.push_back(-1);
            activity.push_back(0.0);
            polarity.push_back(1); // prefer false
            seen.push_back(0);
            heap_pos.push_back(-1);
            heap_insert(v);
        }
    }

    void enqueue(ILit l, int from) {
        const int v = lit_var(l);
        assigns[v] = static_cast<std::int8_t>((l & 1) ? kFalse : kTrue);
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (std::size_t i = trail.size(); i > trail_lim[static_cast<std::size_t>(lvl)]; --i) {
            const int v = lit_var(trail[i - 1]);
            polarity[v] = static_cast<std::int8_t>(trail[i - 1] & 1);
            assigns[v] = kUndef;
            reason[v] = -1;
            heap_insert(v);
        }
        trail.resize(trail_lim[static_cast<std::size_t>(lvl)]);
        trail_lim.resize(static_cast<std::size_t>(lvl));
        qhead = trail.size();
    }

    void attach(int cref) {
        const auto& c = clauses[static_cast<std::size_t>(cref)];
        watches[c.lits[0]].push_back({cref, c.lits[1]});
        watches[c.lits[1]].push_back({cref, c.lits[0]});
    }

    // Returns conflicting clause index or -1.
    int propagate() {
        int conflict = -1;
        while (qhead < trail.size()) {
            const ILit p = trail[qhead++];
            const ILit false_lit = lit_neg(p);
            auto& ws = watches[false_lit];
            ++stats.propagations;
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < ws.size()) {
                const Watch w = ws[i++];
                if (value(w.blocker) == kTrue) {
                    ws[j++] = w;
                    continue;
                }
                auto& c = clauses[static_cast<std::size_t>(w.cref)];
                if (c.deleted) continue;
                if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
                const ILit first = c.lits[0];
                if (first != w.blocker && value(first) == kTrue) {
                    ws[j++] = {w.cref, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.lits.size(); ++k) {
                    if (value(c.lits[k]) != kFalse) {
                        std::swap(c.lits[1], c.lits[k]);
                        watches[c.lits[1]].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {w.cref, first};
                if (value(first) == kFalse) {
                    conflict = w.cref;
                    qhead = trail.size();
                    while (i < ws.size()) ws[j++] = ws[i++];
                } else {
                    enqueue(first, w.cref);
                }
            }
            ws.resize(j);
            if (conflict >= 0) break;
        }
        return conflict;
    }

    void bump_var(int v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (auto& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos[v]));
    }

    void bump_clause(StoredClause& c) {
        c.activity += cla_inc;
        if (c.activity > 1e20) {
            for (int cr : learnts) clauses[static_cast<std::size_t>(cr)].activity *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    // Local redundancy: a literal is implied by other literals of the learnt clause.
    bool redundant(ILit l) const {
        const int r = reason[lit_var(l)];
        if (r < 0) return false;
        const auto& c = clauses[static_cast<std::size_t>(r)];
        for (std::size_t k = 1; k < c.lits.size(); ++k) {
            const int v = lit_var(c.lits[k]);
            if (!seen[v] && level[v] > 0) return false;
        }
        return true;
    }

    void analyze(int conflict, std::vector<ILit>& out, int& back_level, unsigned& lbd) {
        out.clear();
        out.push_back(-1);
        int path = 0;
        ILit p = -1;
        std::size_t index = trail.size();
        do {
            auto& c = clauses[static_cast<std::size_t>(conflict)];
            if (c.learnt) bump_clause(c);
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
                const ILit q = c.lits[k];
                const int v = lit_var(q);
                if (!seen[v] && level[v] > 0) {
                    bump_var(v);
                    seen[v] = 1;
                    if (level[v] >= decision_level()) {
                        ++path;
                    } else {
                        out.push_back(q);
                    }
                }
            }
            while (!seen[lit_var(trail[--index])]) {}
            p = trail[index];
            conflict = reason[lit_var(p)];
            seen[lit_var(p)] = 0;
            --path;
        } while (path > 0);
        out[0] = lit_neg(p);

        std::vector<ILit> all(out.begin() + 1, out.end());
        std::size_t keep = 1;
        for (std::size_t k = 1; k < out.size(); ++k) {
            if (!redundant(out[k])) out[keep++] = out[k];
        }
        out.resize(keep);
        for (ILit l : all) seen[lit_var(l)] = 0;

        back_level = 0;
        if (out.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t k = 2; k < out.size(); ++k) {
                if (level[lit_var(out[k])] > level[lit_var(out[max_i])]) max_i = k;
            }
            std::swap(out[1], out[max_i]);
            back_level = level[lit_var(out[1])];
        }
        std::vector<int> levels;
        for (ILit l : out) levels.push_back(level[lit_var(l)]);
        std::sort(levels.begin(), levels.end());
        lbd = static_cast<unsigned>(std::unique(levels.begin(), levels.end()) - levels.begin());
    }

    [[nodiscard]] bool locked(int cref) const {
        const auto& c = clauses[static_cast<std::size_t>(cref)];
        const int v = lit_var(c.lits[0]);
        return reason[v] == cref && value(c.lits[0]) == kTrue;
    }

    void reduce_db() {
        std::vector<int> order(learnts.begin(), learnts.end());
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& ca = clauses[static_cast<std::size_t>(a)];
            const auto& cb = clauses[static_cast<std::size_t>(b)];
            if (ca.lbd != cb.lbd) return ca.lbd > cb.lbd;
            if (ca.activity != cb.activity) return ca.activity < cb.activity;
            return a < b;
        });
        const std::size_t limit = order.size() / 2;
        std::size_t removed = 0;
        for (int cr : order) {
            if (removed >= limit) break;
            auto& c = clauses[static_cast<std::size_t>(cr)];
            if (c.lbd <= 2 || c.lits.size() <= 2 || locked(cr)) continue;
            c.deleted = true;
            c.lits.clear();
            c.lits.shrink_to_fit();
            ++removed;
        }
        std::erase_if(learnts, [&](int cr) { return clauses[static_cast<std::size_t>(cr)].deleted; });
    }

    // Adds an original clause at decision level 0.
    void add_original(const Clause& clause) {
        if (!ok) return;
        if (clause.empty()) {
            ok = false;
            return;
        }
        std::vector<ILit> lits;
        lits.reserve(clause.size());
        for (const Lit l : clause) lits.push_back(make_lit(l.var - 1, l.negated));
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        std::vector<ILit> kept;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i + 1 < lits.size() && lits[i + 1] == lit_neg(lits[i])) return; // tautology
            const auto v = value(lits[i]);
            if (v == kTrue) return;
            if (v == kUndef) kept.push_back(lits[i]);
        }
        if (kept.empty()) {
            ok = false;
        } else if (kept.size() == 1) {
            enqueue(kept[0], -1);
            if (propagate() >= 0) ok = false;
        } else {
            clauses.push_back({std::move(kept), false, false, 0, 0.0});
            attach(static_cast<int>(clauses.size() - 1));
        }
    }

    SolveStatus search(std::uint64_t conflict_budget, Deadline deadline) {
        std::vector<ILit> learnt;
        std::uint64_t conflicts_here = 0;
        for (;;) {
            const int conflict = propagate();
            if (conflict >= 0) {
                ++stats.conflicts;
                ++conflicts_here;
                if (decision_level() == 0) return SolveStatus::Unsat;
                int back = 0;
                unsigned lbd = 0;
                analyze(conflict, learnt, back, lbd);
                cancel_until(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    clauses.push_back({learnt, true, false, lbd, 0.0});
                    const int cref = static_cast<int>(clauses.size() - 1);
                    learnts.push_back(cref);
                    attach(cref);
                    bump_clause(clauses.back());
                    enqueue(learnt[0], cref);
                }
                var_inc /= 0.95;
                cla_inc /= 0.999;
                if (deadline && (stats.conflicts & 255U) == 0 && Clock::now() > *deadline) return SolveStatus::Timeout;
            } else {
                if (conflicts_here >= conflict_budget) {
                    cancel_until(0);
                    return SolveStatus::Timeout; // restart signal
                }
                if (learnts.size() >= reduce_at + trail.size()) {
                    reduce_db();
                    reduce_at += 300;
                }
                int next = -1;
                while (!heap.empty()) {
                    const int v = heap_pop();
                    if (assigns[v] == kUndef) {
                        next = v;
                        break;
                    }
                }
                if (next < 0) return SolveStatus::Sat;
                ++stats.decisions;
                if (deadline && (stats.decisions & 4095U) == 0 && Clock::now() > *deadline) return SolveStatus::Timeout;
                trail_lim.push_back(trail.size());
                enqueue(make_lit(next, polarity[next] != 0), -1);
            }
        }
    }
};

CdclSolver::CdclSolver() : impl_(std::make_unique<Impl>()) {}
CdclSolver::~CdclSolver() = default;
CdclSolver::CdclSolver(CdclSolver&&) noexcept = default;
CdclSolver& CdclSolver::operator=(CdclSolver&&) noexcept = default;

const CdclSolver::Stats& CdclSolver::stats() const noexcept { return impl_->stats; }

void CdclSolver::load(const SatInstance& inst) {
    auto& s = *impl_;
    s.cancel_until(0);
    s.grow_to(inst.num_vars());
    const auto& cls = inst.clauses();
    for (; s.loaded_clauses < cls.size(); ++s.loaded_clauses) s.add_original(cls[s.loaded_clauses]);
}

SolveResult CdclSolver::solve(Deadline deadline) {
    auto& s = *impl_;
    SolveResult result;
    s.cancel_until(0);
    if (!s.ok) {
        result.status = SolveStatus::Unsat;
        return result;
    }
    if (deadline && Clock::now() > *deadline) {
        result.status = SolveStatus::Timeout;
        return result;
    }
    SolveStatus status = SolveStatus::Timeout;
    for (int restart = 0;; ++restart) {
        const auto budget = static_cast<std::uint64_t>(luby(2.0, restart) * 100.0);
        status = s.search(budget, deadline);
        if (status != SolveStatus::Timeout) break;
        if (deadline && Clock::now() > *deadline) break;
        ++s.stats.restarts;
    }
    if (status == SolveStatus::Unsat) s.ok = false;
    result.status = status;
    if (status == SolveStatus::Sat) {
        result.model.values.assign(static_cast<std::size_t>(s.num_vars) + 1, false);
        for (int v = 0; v < s.num_vars; ++v) result.model.values[static_cast<std::size_t>(v) + 1] = s.assigns[v] == kTrue;
    }
    s.cancel_until(0);
    return result;
}

SolveResult solve(const SatInstance& inst, Deadline deadline) {
    CdclSolver solver;
    solver.load(inst);
    return solver.solve(deadline);
}

} // namespace hopps::sat
