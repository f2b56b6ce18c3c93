#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace galton {

// Runs fn(i) for i in [0, n), split into contiguous chunks over `threads`
// workers. fn must only write to state owned by index i, which keeps the
// result independent of the thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int lo = n * w / workers;
        const int hi = n * (w + 1) / workers;
        pool.emplace_back([&fn, lo, hi] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

} // namespace galton
