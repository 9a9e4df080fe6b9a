#include "block_grouper.hpp"

#include <algorithm>

namespace hopps::detail {

Block make_block(const Circuit& parent, const std::vector<std::size_t>& members) {
    Block b;
    b.members = members;
    std::vector<std::optional<Qubit>> local(parent.num_qubits());
    for (const std::size_t m : members) {
        for (const Qubit q : gate_qubits(parent.gates()[m])) {
            if (!local[q]) {
                local[q] = b.qubits.size();
                b.qubits.push_back(q);
            }
        }
    }
    b.circuit = Circuit(b.qubits.size());
    for (const std::size_t m : members) {
        const Gate& g = parent.gates()[m];
        if (const auto* cx = std::get_if<Cnot>(&g)) {
            b.circuit.cnot(*local[cx->control], *local[cx->target]);
        } else if (const auto* rz = std::get_if<Rz>(&g)) {
            b.circuit.rz(rz->angle, *local[rz->qubit]);
        }
    }
    return b;
}

BlockGrouper::BlockGrouper(const Circuit& c, Fits fits)
    : circuit_(c), fits_(std::move(fits)), last_(c.num_qubits()) {}

std::size_t BlockGrouper::new_unit(bool is_block) {
    units_.push_back({{}, is_block, false, true});
    anc_.emplace_back();
    return units_.size() - 1;
}

bool BlockGrouper::test(std::size_t unit, std::size_t bit) const {
    const auto& w = anc_[unit];
    return bit / 64 < w.size() && ((w[bit / 64] >> (bit % 64)) & 1U) != 0;
}

void BlockGrouper::set(std::size_t unit, std::size_t bit) {
    auto& w = anc_[unit];
    if (w.size() <= bit / 64) w.resize(bit / 64 + 1, 0);
    w[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

void BlockGrouper::clear(std::size_t unit, std::size_t bit) {
    auto& w = anc_[unit];
    if (bit / 64 < w.size()) w[bit / 64] &= ~(std::uint64_t{1} << (bit % 64));
}

void BlockGrouper::unite(std::size_t unit, std::size_t from) {
    auto& w = anc_[unit];
    const auto& f = anc_[from];
    if (w.size() < f.size()) w.resize(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) w[i] |= f[i];
}

bool BlockGrouper::safe(const std::vector<std::size_t>& group, const std::vector<std::size_t>& preds) const {
    // Everything the grown block would wait for, minus the block itself.
    std::vector<std::size_t> before;
    auto in_group = [&](std::size_t u) { return std::find(group.begin(), group.end(), u) != group.end(); };
    auto collect = [&](std::size_t u) {
        for (std::size_t v = 0; v < units_.size(); ++v) {
            if (units_[v].alive && test(u, v) && !in_group(v)) before.push_back(v);
        }
    };
    for (const std::size_t g : group) collect(g);
    for (const std::size_t p : preds) {
        collect(p);
        before.push_back(p);
    }
    for (const std::size_t a : before) {
        for (const std::size_t g : group) {
            if (test(a, g)) return false;
        }
    }
    return true;
}

std::vector<std::size_t> BlockGrouper::grown(const std::vector<std::size_t>& group, std::size_t gate) const {
    std::vector<std::size_t> members{gate};
    for (const std::size_t g : group) members.insert(members.end(), units_[g].members.begin(), units_[g].members.end());
    std::sort(members.begin(), members.end());
    return members;
}

void BlockGrouper::commit(const std::vector<std::size_t>& group, const std::vector<std::size_t>& preds, std::size_t gate) {
    std::size_t target = 0;
    if (group.empty()) {
        target = new_unit(true);
    } else {
        target = *std::min_element(group.begin(), group.end());
    }
    units_[target].members = grown(group, gate);
    for (const std::size_t g : group) {
        if (g == target) continue;
        unite(target, g);
        units_[g].alive = false;
        units_[g].members.clear();
        for (std::size_t v = 0; v < units_.size(); ++v) {
            if (test(v, g)) {
                clear(v, g);
                set(v, target);
            }
        }
        for (auto& l : last_) {
            if (l == g) l = target;
        }
    }
    for (const std::size_t p : preds) {
        unite(target, p);
        set(target, p);
    }
    clear(target, target);
    for (std::size_t v = 0; v < units_.size(); ++v) {
        if (v != target && units_[v].alive && test(v, target)) unite(v, target);
    }
    for (const Qubit q : gate_qubits(circuit_.gates()[gate])) last_[q] = target;
}

void BlockGrouper::add(std::size_t gate) {
    const Gate& g = circuit_.gates()[gate];
    const auto qubits = gate_qubits(g);
    std::vector<std::size_t> preds;
    for (const Qubit q : qubits) {
        if (last_[q] && std::find(preds.begin(), preds.end(), *last_[q]) == preds.end()) preds.push_back(*last_[q]);
    }

    if (!is_phase_gate(g)) {
        const std::size_t u = new_unit(false);
        units_[u].members.push_back(gate);
        for (const std::size_t p : preds) {
            unite(u, p);
            set(u, p);
        }
        for (const Qubit q : qubits) last_[q] = u;
        return;
    }

    std::vector<std::size_t> open;
    for (const std::size_t p : preds) {
        if (units_[p].is_block && !units_[p].sealed) open.push_back(p);
    }
    auto others = [&](const std::vector<std::size_t>& group) {
        std::vector<std::size_t> rest;
        for (const std::size_t p : preds) {
            if (std::find(group.begin(), group.end(), p) == group.end()) rest.push_back(p);
        }
        return rest;
    };
    auto fits = [&](const std::vector<std::size_t>& group) { return !fits_ || fits_(grown(group, gate)); };

    if (open.size() > 1 && safe(open, others(open)) && fits(open)) {
        commit(open, others(open), gate);
        return;
    }
    for (const std::size_t b : open) {
        const std::vector<std::size_t> group{b};
        if (!safe(group, others(group))) continue;
        if (!fits(group)) {
            units_[b].sealed = true;
            continue;
        }
        commit(group, others(group), gate);
        return;
    }
    const bool alone_fits = fits({});
    commit({}, preds, gate);
    if (!alone_fits) units_.back().sealed = true;
}

void BlockGrouper::seal_all() {
    for (auto& u : units_) u.sealed = true;
}

std::vector<Block> BlockGrouper::blocks() const {
    std::vector<Block> out;
    for (const auto& u : units_) {
        if (u.alive && u.is_block && !u.members.empty()) out.push_back(make_block(circuit_, u.members));
    }
    std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) { return a.first() < b.first(); });
    return out;
}

} // namespace hopps::detail
