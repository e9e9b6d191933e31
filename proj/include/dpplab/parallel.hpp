#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dpplab::parallel {

inline int default_workers() {
    if (const char* env = std::getenv("DPPLAB_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs body(i) for i in [0,n).  Work is claimed from a shared counter, so the
// partition varies with the thread count, but each index is processed exactly
// once; callers must write results into per-index slots and aggregate in
// index order to stay deterministic.
inline void for_index(long n, const std::function<void(long)>& body, int workers = 0) {
    if (workers <= 0) workers = default_workers();
    if (workers == 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next(0);
    auto run = [&]() {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

} // namespace dpplab::parallel
