#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hsls {

/// Worker cap: hardware concurrency, further limited by the HSLS_THREADS
/// environment variable when set to a positive integer.
inline unsigned worker_limit() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HSLS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
        }
    }
    return hw;
}

namespace detail {

inline void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

/// Runs fn(i) for i in [0, n). Work items must write to disjoint slots so the
/// result is identical for any worker count. Exceptions are rethrown on the
/// calling thread (first one wins).
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>({worker_limit(), n, 64});
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t begin = n * t / workers;
        const std::size_t end = n * (t + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace hsls
