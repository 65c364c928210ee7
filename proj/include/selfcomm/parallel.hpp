#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace selfcomm {

// Runs f(i) for i in [0, count).  Work items must be independent and derive any
// randomness from their own index so the result cannot depend on the thread
// count.
template <class F>
void parallel_for(long long count, int threads, F&& f) {
    if (threads <= 1 || count <= 1) {
        for (long long i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= count) break;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = threads < static_cast<int>(count) ? threads : static_cast<int>(count);
    pool.reserve(spawn);
    for (int w = 0; w < spawn; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace selfcomm
