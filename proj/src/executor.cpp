#include "tcprof/executor.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tcprof {

Executor::Executor(unsigned threads) : threads_(threads == 0 ? 1 : threads) {}

Executor Executor::hardware() { return Executor(std::thread::hardware_concurrency()); }

void Executor::for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn) const {
    if (count == 0) return;
    if (threads_ == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count, std::memory_order_relaxed);
            }
        }
    };

    const unsigned width = static_cast<unsigned>(std::min<std::size_t>(threads_, count));
    {
        std::vector<std::jthread> pool;
        pool.reserve(width);
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace tcprof
