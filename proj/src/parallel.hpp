#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qmlkit::detail {

/// Splits [0, n) into contiguous chunks, one per worker. Workers write to
/// disjoint output slots, so results do not depend on the worker count.
inline void parallel_for(std::size_t n, int n_threads,
                         const std::function<void(std::size_t, std::size_t)>& chunk) {
    if (n == 0) {
        return;
    }
    if (n_threads < 1) {
        n_threads = 1;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
    if (workers == 1) {
        chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back(chunk, begin, end);
    }
    for (auto& t : pool) {
        t.join();
    }
}

} // namespace qmlkit::detail
