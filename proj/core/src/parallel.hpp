#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace kerrjc::detail {

// Runs fn(i) for i in [0, count) on up to `threads` workers with a static
// strided schedule. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(long count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, std::max(1L, count)));
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (long i = w; i < count; i += threads) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace kerrjc::detail
