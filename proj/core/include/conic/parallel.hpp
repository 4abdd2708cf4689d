#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace conic {

// Thread cap: CONIC_CODES_THREADS env var, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("CONIC_CODES_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return static_cast<int>(std::min<long>(n, 256));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n). Workers own disjoint index ranges, so fn may
// write to per-index slots without synchronization. Results must not depend
// on execution order.
template <typename Fn>
void parallel_for(int64_t n, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = worker_count();
    threads = static_cast<int>(std::min<int64_t>(threads, std::max<int64_t>(n, 1)));
    if (threads <= 1 || n < 2) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace conic
