#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace qsim::detail {

/// 0 means "use hardware parallelism"; anything else is used as given.
inline int resolve_workers(int workers) {
    if (workers > 0)
        return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(lo, hi) over a contiguous block partition of [0, count) with
/// `workers` threads. Blocks are fixed by (count, workers) alone, so each
/// index is written by exactly one worker regardless of scheduling. Small
/// ranges run inline.
template <class Body>
void parallel_chunks(std::uint64_t count, int workers, Body&& body) {
    workers = resolve_workers(workers);
    constexpr std::uint64_t kInlineThreshold = 1u << 12;
    if (workers <= 1 || count <= kInlineThreshold) {
        body(std::uint64_t{0}, count);
        return;
    }
    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (std::uint64_t t = 1; t < w; ++t) {
        const std::uint64_t lo = count * t / w;
        const std::uint64_t hi = count * (t + 1) / w;
        threads.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::uint64_t{0}, count / w);
    for (auto& th : threads)
        th.join();
}

} // namespace qsim::detail
