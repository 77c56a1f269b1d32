#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace overlap {

/// Data-parallel width: OVERLAP_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
inline std::size_t worker_count()
{
    if (const char* env = std::getenv("OVERLAP_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Splits [0, count) into contiguous chunks and runs fn(chunk, begin, end) on
/// each. Chunk boundaries depend only on count and the worker count, and
/// callers reduce per-chunk results in chunk order.
template <typename Fn>
std::size_t parallel_chunks(std::size_t count, Fn&& fn)
{
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, count));
    const std::size_t step = (count + workers - 1) / std::max<std::size_t>(1, workers);
    if (workers <= 1) {
        fn(std::size_t{0}, std::size_t{0}, count);
        return 1;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * step);
        const std::size_t end = std::min(count, begin + step);
        threads.emplace_back([&, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return workers;
}

}  // namespace overlap
