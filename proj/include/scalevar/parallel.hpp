#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace scalevar {

/// Worker count for node loops: SCALEVAR_THREADS if set and positive,
/// otherwise the hardware concurrency.
std::size_t max_threads();

/// Calls f(i) for i in [0, n). Iterations must be independent; results written
/// to distinct slots keep the outcome independent of the thread count. The
/// first exception thrown by any iteration is rethrown on the caller.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    constexpr std::size_t kMinChunk = 256;
    const std::size_t workers = std::min(max_threads(), (n + kMinChunk - 1) / kMinChunk);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    f(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace scalevar
