#ifndef HOIP_PARALLEL_HPP
#define HOIP_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hoip {

// Run fn(i) for i in [0, n) on up to n_threads workers. Work is handed out in
// fixed-size blocks through an atomic cursor, so results must be written to
// per-index slots; outputs are then identical for any thread count.
inline void parallel_for(std::size_t n, int n_threads,
                         const std::function<void(std::size_t)>& fn,
                         std::size_t block = 64) {
    if (n == 0) return;
    if (n_threads <= 1 || n <= block) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
        while (true) {
            std::size_t begin = cursor.fetch_add(block);
            if (begin >= n) return;
            std::size_t end = begin + block < n ? begin + block : n;
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int workers = n_threads;
    if (static_cast<std::size_t>(workers) > (n + block - 1) / block)
        workers = static_cast<int>((n + block - 1) / block);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hoip

#endif
