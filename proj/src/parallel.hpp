#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace taxicab::detail {

// Runs fn(0..count-1) across up to `workers` threads. Tasks write only to
// their own output slots, so results do not depend on scheduling. The first
// exception wins; remaining tasks are drained and it is rethrown after join.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(body);
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace taxicab::detail
