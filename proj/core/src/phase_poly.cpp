#include "hopps/phase_poly.hpp"

#include <optional>
#include <set>

#include "hopps/error.hpp"

namespace hopps {

void ParityTable::add(BitVector term, Angle angle) {
    if (term.size() != n_) throw ValidationError("term length does not match qubit count");
    if (term.none()) throw ValidationError("term parity must be nonzero");
    terms_.push_back(std::move(term));
    angles_.push_back(std::move(angle));
}

void PhasePolyRep::validate() const {
    const std::size_t n = initial.size();
    if (final.size() != n || table.num_qubits() != n) throw ValidationError("phase polynomial parts disagree on qubit count");
}

PhasePolyRep extract_rep(const Circuit& c, const ParityMatrix& initial) {
    if (initial.size() != c.num_qubits()) throw ValidationError("initial parity size does not match circuit width");
    ParityMatrix p = initial;
    ParityTable table(c.num_qubits());
    for (const auto& g : c.gates()) {
        if (const auto* cx = std::get_if<Cnot>(&g)) {
            p.apply_cnot(cx->control, cx->target);
        } else if (const auto* rz = std::get_if<Rz>(&g)) {
            table.add(p.row(rz->qubit), rz->angle);
        } else {
            throw ValidationError("unsupported gate '" + std::get<Opaque>(g).name + "' in a {CNOT, Rz} circuit");
        }
    }
    return PhasePolyRep{initial, std::move(p), std::move(table)};
}

PhasePolyRep extract_rep(const Circuit& c) { return extract_rep(c, ParityMatrix::identity(c.num_qubits())); }

CanonicalRep canonicalize(const PhasePolyRep& rep) {
    CanonicalRep out{rep.final, {}};
    const auto& terms = rep.table.terms();
    const auto& angles = rep.table.angles();
    for (std::size_t i = 0; i < terms.size(); ++i) out.phases[terms[i]] += angles[i];
    std::erase_if(out.phases, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

bool equivalent(const CanonicalRep& a, const CanonicalRep& b) {
    if (a.final != b.final || a.phases.size() != b.phases.size()) return false;
    for (auto ia = a.phases.begin(), ib = b.phases.begin(); ia != a.phases.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !ia->second.approx_equal(ib->second)) return false;
    }
    return true;
}

bool equivalent(const Circuit& a, const Circuit& b, const ParityMatrix& initial) {
    if (a.num_qubits() != b.num_qubits()) throw ValidationError("circuits differ in qubit count");
    return equivalent(canonicalize(extract_rep(a, initial)), canonicalize(extract_rep(b, initial)));
}

bool equivalent(const Circuit& a, const Circuit& b) {
    return equivalent(a, b, ParityMatrix::identity(a.num_qubits()));
}

bool realizes(const Circuit& c, const PhasePolyRep& rep) {
    if (c.num_qubits() != rep.num_qubits()) return false;
    return equivalent(canonicalize(extract_rep(c, rep.initial)), canonicalize(rep));
}

PhasePolyRep merge_terms(const PhasePolyRep& rep) {
    rep.validate();
    std::vector<BitVector> order;
    std::map<BitVector, Angle> sums;
    std::set<BitVector> symbolic;
    const auto& terms = rep.table.terms();
    const auto& angles = rep.table.angles();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto [it, inserted] = sums.try_emplace(terms[i], angles[i]);
        if (inserted) {
            order.push_back(terms[i]);
        } else {
            it->second += angles[i];
        }
        if (angles[i].is_symbolic()) symbolic.insert(terms[i]);
    }
    ParityTable table(rep.num_qubits());
    for (const auto& t : order) {
        const Angle& a = sums.at(t);
        if (!a.is_zero() || symbolic.contains(t)) table.add(t, a);
    }
    return PhasePolyRep{rep.initial, rep.final, std::move(table)};
}

Circuit place_rotations(const PhasePolyRep& rep, std::span<const std::vector<Cnot>> steps) {
    const std::size_t n = rep.num_qubits();
    const auto& terms = rep.table.terms();
    // slot[i] = (slice, qubit) where term i is placed
    std::vector<std::optional<std::pair<std::size_t, Qubit>>> slot(terms.size());
    std::size_t remaining = terms.size();
    ParityMatrix p = rep.initial;
    auto scan = [&](std::size_t slice) {
        if (remaining == 0) return;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (slot[i]) continue;
            for (Qubit q = 0; q < n; ++q) {
                if (p.row(q) == terms[i]) {
                    slot[i] = std::make_pair(slice, q);
                    --remaining;
                    break;
                }
            }
        }
    };
    scan(0);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        for (const auto& cx : steps[k]) p.apply_cnot(cx.control, cx.target);
        scan(k + 1);
    }
    if (remaining != 0) throw ValidationError("a term parity never appears in the CNOT sequence");

    Circuit c(n);
    auto emit_slice = [&](std::size_t slice) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (slot[i]->first == slice) c.rz(rep.table.angles()[i], slot[i]->second);
        }
    };
    emit_slice(0);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        for (const auto& cx : steps[k]) c.cnot(cx.control, cx.target);
        emit_slice(k + 1);
    }
    return c;
}

} // namespace hopps
