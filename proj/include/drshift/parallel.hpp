#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace drshift {

// Worker cap: DR_ENTROPY_THREADS overrides, hardware concurrency otherwise.
inline int thread_cap(int requested = 0) {
    int n = requested;
    if (const char* env = std::getenv("DR_ENTROPY_THREADS")) {
        int parsed = std::atoi(env);
        if (parsed > 0) n = n > 0 ? std::min(n, parsed) : parsed;
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::min(n, 64);
}

// Index-sharded loop over pure work items; results land in caller-owned slots
// so the merge order never depends on scheduling.
inline void parallel_for_index(std::size_t count, int threads,
                               const std::function<void(std::size_t)>& fn) {
    threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < count;
                 i += static_cast<std::size_t>(threads))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace drshift
