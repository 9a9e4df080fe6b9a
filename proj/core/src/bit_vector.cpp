#include "hopps/bit_vector.hpp"

#include <bit>
#include <stdexcept>

namespace hopps {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t size) { return (size + kWordBits - 1) / kWordBits; }
} // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t j = 0;
    for (int b : bits) set(j++, b != 0);
}

BitVector BitVector::from_bits(const std::vector<int>& bits) {
    BitVector v(bits.size());
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] != 0 && bits[j] != 1) throw std::invalid_argument("bit entries must be 0 or 1");
        v.set(j, bits[j] != 0);
    }
    return v;
}

BitVector BitVector::unit(std::size_t size, std::size_t index) {
    BitVector v(size);
    v.set(index, true);
    return v;
}

bool BitVector::get(std::size_t j) const {
    if (j >= size_) throw std::out_of_range("bit index out of range");
    return ((words_[j / kWordBits] >> (j % kWordBits)) & 1U) != 0;
}

void BitVector::set(std::size_t j, bool value) {
    if (j >= size_) throw std::out_of_range("bit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (j % kWordBits);
    if (value) {
        words_[j / kWordBits] |= mask;
    } else {
        words_[j / kWordBits] &= ~mask;
    }
}

void BitVector::flip(std::size_t j) { set(j, !get(j)); }

bool BitVector::none() const noexcept {
    for (auto w : words_) {
        if (w != 0) return false;
    }
    return true;
}

std::size_t BitVector::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("bit vector length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool operator<(const BitVector& lhs, const BitVector& rhs) {
    if (lhs.size_ != rhs.size_) return lhs.size_ < rhs.size_;
    // lexicographic on bit index order
    for (std::size_t j = 0; j < lhs.size_; ++j) {
        const bool a = lhs.get(j);
        const bool b = rhs.get(j);
        if (a != b) return !a && b;
    }
    return false;
}

std::vector<int> BitVector::to_bits() const {
    std::vector<int> out(size_);
    for (std::size_t j = 0; j < size_; ++j) out[j] = get(j) ? 1 : 0;
    return out;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t j = 0; j < size_; ++j) {
        if (get(j)) s[j] = '1';
    }
    return s;
}

std::size_t BitVector::hash() const noexcept {
    std::size_t h = size_ * 0x9E3779B97F4A7C15ULL;
    for (auto w : words_) {
        h ^= std::hash<std::uint64_t>{}(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace hopps
