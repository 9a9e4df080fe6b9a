#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hopps/bit_vector.hpp"

namespace hopps {

/// Square matrix over GF(2) whose row i is the parity currently held by qubit i.
///
/// Rows are packed bit vectors so a CNOT is a word-wise XOR of two rows. Matrices built
/// through `from_rows` are checked for invertibility; matrices evolved through
/// `apply_cnot` stay invertible because a CNOT is an elementary row operation.
class ParityMatrix {
public:
    ParityMatrix() = default;
    static ParityMatrix identity(std::size_t n);
    /// Throws ValidationError if the rows are not square or not invertible.
    static ParityMatrix from_rows(std::vector<BitVector> rows);
    static ParityMatrix from_bits(const std::vector<std::vector<int>>& bits);

    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] const BitVector& row(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] std::span<const BitVector> rows() const noexcept { return rows_; }
    [[nodiscard]] bool get(std::size_t i, std::size_t j) const { return rows_.at(i).get(j); }
    [[nodiscard]] bool is_identity() const;

    /// row(target) ^= row(control).
    void apply_cnot(std::size_t control, std::size_t target);

    [[nodiscard]] std::vector<std::vector<int>> to_bits() const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t hash() const noexcept;

    friend bool operator==(const ParityMatrix&, const ParityMatrix&) = default;

private:
    explicit ParityMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {}

    std::vector<BitVector> rows_;
};

/// Value-returning form of ParityMatrix::apply_cnot.
[[nodiscard]] ParityMatrix apply_cnot(ParityMatrix p, std::size_t control, std::size_t target);

/// Rank over GF(2) via Gaussian elimination.
[[nodiscard]] std::size_t gf2_rank(std::span<const BitVector> rows);

} // namespace hopps

template <>
struct std::hash<hopps::ParityMatrix> {
    std::size_t operator()(const hopps::ParityMatrix& m) const noexcept { return m.hash(); }
};
