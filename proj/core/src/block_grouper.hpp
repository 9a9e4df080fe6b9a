#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hopps/circuit.hpp"
#include "hopps/peephole.hpp"

namespace hopps::detail {

/// Scan-line grouping of phase gates into blocks that can each be emitted atomically.
///
/// Every gate belongs to a unit: a block, or a singleton for an opaque gate. `anc_[u]` is
/// the transitively closed set of units that must precede unit u; a gate may join a set of
/// blocks only if no unit outside that set sits between them and the gate.
class BlockGrouper {
public:
    /// Receives the would-be members (ascending parent positions) of a grown block.
    using Fits = std::function<bool(const std::vector<std::size_t>& members)>;

    explicit BlockGrouper(const Circuit& c, Fits fits = {});

    /// Processes gates in order; call with 0, 1, 2, ...
    void add(std::size_t gate);
    /// No open block accepts further gates.
    void seal_all();
    /// Blocks ordered by first member.
    [[nodiscard]] std::vector<Block> blocks() const;

private:
    struct Unit {
        std::vector<std::size_t> members;
        bool is_block = false;
        bool sealed = false;
        bool alive = true;
    };

    std::size_t new_unit(bool is_block);
    [[nodiscard]] bool test(std::size_t unit, std::size_t bit) const;
    void set(std::size_t unit, std::size_t bit);
    void clear(std::size_t unit, std::size_t bit);
    void unite(std::size_t unit, std::size_t from);
    [[nodiscard]] bool safe(const std::vector<std::size_t>& group, const std::vector<std::size_t>& preds) const;
    [[nodiscard]] std::vector<std::size_t> grown(const std::vector<std::size_t>& group, std::size_t gate) const;
    void commit(const std::vector<std::size_t>& group, const std::vector<std::size_t>& preds, std::size_t gate);

    const Circuit& circuit_;
    Fits fits_;
    std::vector<Unit> units_;
    std::vector<std::vector<std::uint64_t>> anc_;
    std::vector<std::optional<std::size_t>> last_;
};

/// Block view of the given parent positions.
[[nodiscard]] Block make_block(const Circuit& parent, const std::vector<std::size_t>& members);

} // namespace hopps::detail
