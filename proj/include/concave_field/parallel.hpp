#ifndef CONCAVE_FIELD_PARALLEL_HPP
#define CONCAVE_FIELD_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace concave_field {

// Worker count: hardware concurrency capped by CONCAVE_FIELD_THREADS.
inline std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("CONCAVE_FIELD_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    }
    return n;
}

// Runs fn(i) for i in [0, count) across a static partition of threads.
// Each index must write only its own slot of any shared output, so results
// do not depend on the worker count.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace concave_field

#endif
