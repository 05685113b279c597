#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sheafctx
{
    /// 0 means "use the available hardware parallelism".
    inline auto resolve_threads(std::size_t requested) -> std::size_t
    {
        if (requested > 0)
            return requested;
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }

    /// Calls body(i) for every i in [0, count), handing indices out
    /// dynamically to up to `threads` workers. The first exception thrown by
    /// any call is rethrown on the calling thread once all workers stop.
    template <typename Body>
    auto parallel_for(std::size_t count, std::size_t threads, Body && body) -> void
    {
        auto workers = std::min(resolve_threads(threads), count);
        if (workers <= 1) {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto work = [&] {
            while (! failed) {
                auto i = next++;
                if (i >= count)
                    return;
                try {
                    body(i);
                }
                catch (...) {
                    std::lock_guard lock{error_mutex};
                    if (! error)
                        error = std::current_exception();
                    failed = true;
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
}
