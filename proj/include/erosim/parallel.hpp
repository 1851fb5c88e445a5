#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace erosim {

// Worker count: EROSIM_WORKERS if set, else the hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("EROSIM_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0)
            return static_cast<unsigned>(w);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

// Calls f(i) for i in [0, n) on a pool of workers. Callers write results by
// index, so output never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned workers = worker_count())
{
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers && w < n; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lk(mu);
                    if (!err)
                        err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace erosim
