#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace confcauchy {

inline unsigned hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Static range partition across n_threads workers. Chunk boundaries are
/// rounded up to a multiple of `granularity`, so callers that bucket work
/// by index / granularity never share a bucket between workers. The first
/// exception thrown by a worker is rethrown on the calling thread.
inline void parallel_for(std::size_t n, unsigned n_threads,
                         const std::function<void(std::size_t, std::size_t)>& body,
                         std::size_t granularity = 1) {
    if (n == 0) return;
    if (granularity == 0) granularity = 1;
    if (n_threads <= 1 || n <= granularity) {
        body(0, n);
        return;
    }
    std::size_t chunk = (n + n_threads - 1) / n_threads;
    chunk = (chunk + granularity - 1) / granularity * granularity;

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace confcauchy
