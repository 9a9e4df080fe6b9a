#include "hopps/parity_matrix.hpp"

#include <sstream>

#include "hopps/error.hpp"

namespace hopps {

ParityMatrix ParityMatrix::identity(std::size_t n) {
    std::vector<BitVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(BitVector::unit(n, i));
    return ParityMatrix(std::move(rows));
}

ParityMatrix ParityMatrix::from_rows(std::vector<BitVector> rows) {
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw ValidationError("parity matrix must be square");
    }
    if (gf2_rank(rows) != rows.size()) throw ValidationError("parity matrix is not invertible over GF(2)");
    return ParityMatrix(std::move(rows));
}

ParityMatrix ParityMatrix::from_bits(const std::vector<std::vector<int>>& bits) {
    std::vector<BitVector> rows;
    rows.reserve(bits.size());
    for (const auto& r : bits) {
        try {
            rows.push_back(BitVector::from_bits(r));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
    }
    return from_rows(std::move(rows));
}

bool ParityMatrix::is_identity() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i] != BitVector::unit(rows_.size(), i)) return false;
    }
    return true;
}

void ParityMatrix::apply_cnot(std::size_t control, std::size_t target) {
    if (control >= rows_.size() || target >= rows_.size()) throw std::out_of_range("CNOT qubit index out of range");
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    rows_[target] ^= rows_[control];
}

std::vector<std::vector<int>> ParityMatrix::to_bits() const {
    std::vector<std::vector<int>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.to_bits());
    return out;
}

std::string ParityMatrix::to_string() const {
    std::ostringstream os;
    for (const auto& r : rows_) os << r.to_string() << '\n';
    return os.str();
}

std::size_t ParityMatrix::hash() const noexcept {
    std::size_t h = rows_.size();
    for (const auto& r : rows_) h = h * 1000003U ^ r.hash();
    return h;
}

ParityMatrix apply_cnot(ParityMatrix p, std::size_t control, std::size_t target) {
    p.apply_cnot(control, target);
    return p;
}

std::size_t gf2_rank(std::span<const BitVector> rows) {
    std::vector<BitVector> m(rows.begin(), rows.end());
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && !m[pivot].get(col)) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != rank && m[r].get(col)) m[r] ^= m[rank];
        }
        ++rank;
    }
    return rank;
}

} // namespace hopps
