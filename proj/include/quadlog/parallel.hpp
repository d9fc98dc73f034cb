#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace quadlog {

/// Worker count from QUADLOG_THREADS (0 or 1 = sequential); hardware
/// concurrency when unset or unparsable.
std::size_t thread_count();

/// Calls fn(i) for i in [0, count). Work is split into contiguous blocks
/// over at most thread_count() threads; fn must only write to slot i.
/// The first exception thrown by any worker is rethrown after all join.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_per_thread = 1) {
    const std::size_t workers =
        std::min(thread_count(), min_per_thread ? count / min_per_thread : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            pool.emplace_back([&fn, &errors, w, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace quadlog
