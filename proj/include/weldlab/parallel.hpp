#pragma once
// Deterministic data-parallel loop. Work is split into contiguous chunks and
// every index is computed independently, so results are byte-identical for
// any thread count. WELDLAB_THREADS caps the pool.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace weldlab {

inline int thread_budget() {
    if (const char* env = std::getenv("WELDLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// fn(first, last) over a partition of [begin, end)
template <class Fn>
void parallel_for(long begin, long end, Fn&& fn) {
    const long count = end - begin;
    if (count <= 0) return;
    const long threads = std::min<long>(thread_budget(), count);
    if (threads <= 1) {
        fn(begin, end);
        return;
    }
    const long chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (long t = 0; t < threads; ++t) {
        const long lo = begin + t * chunk;
        const long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace weldlab
