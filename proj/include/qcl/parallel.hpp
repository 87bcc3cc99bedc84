#pragma once

// Chunked parallel loops. Work is split into fixed chunks that are reduced in chunk
// order, so results depend on (seed, chunk size) and never on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qcl {

inline std::atomic<int>& thread_cap() {
    static std::atomic<int> cap{0};
    return cap;
}

/// Caps worker threads; 0 restores the hardware default.
inline void set_max_threads(int n) { thread_cap().store(std::max(n, 0)); }

inline int max_threads() {
    const int cap = thread_cap().load();
    if (cap > 0) return cap;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(chunk) for chunk in [0, n_chunks) on up to max_threads() workers.
template <class Fn>
void for_each_chunk(std::size_t n_chunks, Fn&& fn) {
    const auto workers =
        static_cast<std::size_t>(std::min<std::size_t>(max_threads(), std::max<std::size_t>(n_chunks, 1)));
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                try {
                    fn(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline std::size_t chunk_count(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

}  // namespace qcl
