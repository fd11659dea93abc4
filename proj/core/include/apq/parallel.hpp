#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace apq {

/// Runs body(i) for i in [0, n) across hardware threads. Writers must target
/// index-addressed slots so results stay deterministic regardless of the
/// thread schedule.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace apq
