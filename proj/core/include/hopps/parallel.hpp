#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hopps {

/// Maps `fn` over `items` on up to `jobs` threads. Results land at their item's index, so
/// the output never depends on scheduling. An item whose call throws gets
/// `fallback(item)` instead.
template <class In, class Fn, class Fallback>
auto run_parallel(const std::vector<In>& items, Fn fn, Fallback fallback, std::size_t jobs) {
    using Out = decltype(fn(items.front()));
    std::vector<std::optional<Out>> slots(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                slots[i].emplace(fallback(items[i]));
            }
        }
    };
    const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), items.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    std::vector<Out> out;
    out.reserve(items.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace hopps
