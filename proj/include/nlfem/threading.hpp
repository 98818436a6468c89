#pragma once

#include <thread>
#include <vector>

namespace nlfem {

/// Static-chunked parallel loop over [0, n).  Each index is processed by
/// exactly one worker, so results are independent of the thread count as
/// long as iterations write disjoint state.  threads == 0 uses the machine
/// parallelism; threads == 1 runs inline.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        int lo = static_cast<int>(static_cast<long long>(n) * t / threads);
        int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace nlfem
