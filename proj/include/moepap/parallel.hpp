#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace moepap {

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
/// Each index is visited exactly once; the first exception thrown is rethrown
/// after all workers have joined.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn)
{
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    pool.clear();

    if (error)
        std::rethrow_exception(error);
}

} // namespace moepap
