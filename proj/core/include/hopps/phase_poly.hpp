#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "hopps/angle.hpp"
#include "hopps/bit_vector.hpp"
#include "hopps/circuit.hpp"
#include "hopps/parity_matrix.hpp"

namespace hopps {

/// Term parities with their rotation angles, in positional correspondence.
class ParityTable {
public:
    ParityTable() = default;
    explicit ParityTable(std::size_t n) : n_(n) {}

    /// Throws ValidationError for a zero vector or a length mismatch.
    void add(BitVector term, Angle angle);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] const std::vector<BitVector>& terms() const noexcept { return terms_; }
    [[nodiscard]] const std::vector<Angle>& angles() const noexcept { return angles_; }

private:
    std::size_t n_ = 0;
    std::vector<BitVector> terms_;
    std::vector<Angle> angles_;
};

/// Initial parity I, final parity G and parity table T of a {CNOT, Rz} circuit.
struct PhasePolyRep {
    ParityMatrix initial;
    ParityMatrix final;
    ParityTable table;

    [[nodiscard]] std::size_t num_qubits() const noexcept { return initial.size(); }
    /// Throws ValidationError unless all three parts agree on the qubit count.
    void validate() const;
};

/// Order-free form used for equivalence: final parity plus merged, nonzero phases.
struct CanonicalRep {
    ParityMatrix final;
    std::map<BitVector, Angle> phases;
};

/// Walks the circuit from `initial`, recording (row q, angle) at every Rz on q.
/// Throws ValidationError if the circuit contains an opaque gate.
[[nodiscard]] PhasePolyRep extract_rep(const Circuit& c, const ParityMatrix& initial);
[[nodiscard]] PhasePolyRep extract_rep(const Circuit& c);

[[nodiscard]] CanonicalRep canonicalize(const PhasePolyRep& rep);

/// Same final parity, same key set, angles equal within kAngleEpsilon (symbols by name).
[[nodiscard]] bool equivalent(const CanonicalRep& a, const CanonicalRep& b);
[[nodiscard]] bool equivalent(const Circuit& a, const Circuit& b, const ParityMatrix& initial);
[[nodiscard]] bool equivalent(const Circuit& a, const Circuit& b);
/// Whether `c`, started from rep.initial, realizes `rep`.
[[nodiscard]] bool realizes(const Circuit& c, const PhasePolyRep& rep);

/// Synthesis input form: duplicate terms merged by angle summation (first-occurrence
/// order kept), numeric zero rotations dropped, symbolic ones kept.
[[nodiscard]] PhasePolyRep merge_terms(const PhasePolyRep& rep);

/// Builds a circuit from CNOT steps, placing each term's Rz right after the earliest
/// parity slice where some row equals it (earliest step, then lowest qubit). Gates of one
/// step are emitted together. Throws ValidationError if a term never appears.
[[nodiscard]] Circuit place_rotations(const PhasePolyRep& rep, std::span<const std::vector<Cnot>> steps);

} // namespace hopps
