#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace hopps {

/// Fixed-length packed vector over GF(2). Bit j is the coefficient of x_j.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);
    BitVector(std::initializer_list<int> bits);
    static BitVector from_bits(const std::vector<int>& bits);
    static BitVector unit(std::size_t size, std::size_t index);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool get(std::size_t j) const;
    void set(std::size_t j, bool value);
    void flip(std::size_t j);

    [[nodiscard]] bool none() const noexcept;
    [[nodiscard]] bool any() const noexcept { return !none(); }
    [[nodiscard]] std::size_t count() const noexcept;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend bool operator<(const BitVector& lhs, const BitVector& rhs);

    [[nodiscard]] std::vector<int> to_bits() const;
    /// "101" style, index 0 first.
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t hash() const noexcept;
    [[nodiscard]] const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace hopps

template <>
struct std::hash<hopps::BitVector> {
    std::size_t operator()(const hopps::BitVector& v) const noexcept { return v.hash(); }
};
