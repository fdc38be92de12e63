#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wavode {

inline unsigned thread_count() {
    if (const char* env = std::getenv("WAVODE_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) across threads. Writes must be disjoint;
// results are identical for any thread count. The first exception thrown
// by any worker is rethrown on the caller.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    unsigned threads = thread_count();
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (threads > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace wavode
