#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace leadernet {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items must write to
/// disjoint outputs; the first exception thrown by any item is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn &&fn) {
    threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// Splits [0, n) into fixed-size blocks whose boundaries depend only on n, so that
/// per-block partial sums reduced in block order give the same bits for any worker count.
struct BlockPartition {
    std::size_t n;
    std::size_t block_size;

    explicit BlockPartition(std::size_t n_, std::size_t max_blocks = 256)
        : n(n_), block_size(std::max<std::size_t>(16, (n_ + max_blocks - 1) / max_blocks)) {}

    std::size_t block_count() const { return (n + block_size - 1) / block_size; }
    std::size_t begin(std::size_t b) const { return b * block_size; }
    std::size_t end(std::size_t b) const { return std::min(n, (b + 1) * block_size); }
};

} // namespace leadernet
