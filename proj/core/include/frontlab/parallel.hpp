#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace frontlab {

/// Runs fn(0) ... fn(n_jobs-1) on up to `workers` threads (0 = one per
/// hardware thread). Job order within a thread follows the shared counter, so
/// results must be written to per-index slots; aggregation stays deterministic.
/// The first exception thrown by any job is rethrown after all threads join.
template <typename Fn>
void parallel_for_indexed(int n_jobs, int workers, Fn&& fn) {
    if (n_jobs <= 0) return;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 1;
    }
    workers = std::min(workers, n_jobs);

    if (workers == 1) {
        for (int i = 0; i < n_jobs; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_jobs) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace frontlab
