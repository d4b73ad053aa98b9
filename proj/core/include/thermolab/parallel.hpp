#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace thermolab {

// Runs fn(i) for i in [0, n) over `workers` threads with a static partition:
// worker w handles i = w, w + workers, w + 2*workers, ...
// Callers that reduce must collect per-index results and fold them in index
// order, so outputs do not depend on the worker count.
template <typename Fn>
void parallel_for_static(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace thermolab
