#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace driftlab {

// Applies fn to every element with up to `threads` workers. Results land in
// input order, so output is identical for any thread count. The first
// exception (by index) is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, int threads) -> std::vector<decltype(fn(in[0]))> {
    using R = decltype(fn(in[0]));
    std::vector<R> out(in.size());
    const std::size_t nthreads = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1, std::max<std::size_t>(in.size(), 1));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(in.size());
    auto work = [&] {
        for (std::size_t i = next++; i < in.size(); i = next++) {
            try {
                out[i] = fn(in[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace driftlab
