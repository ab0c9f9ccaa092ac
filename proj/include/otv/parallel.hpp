#ifndef OTV_PARALLEL_HPP
#define OTV_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace otv {

// Worker count: the OTV_THREADS environment variable when set, otherwise
// the hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0, n) across workers.  Results must be written to
// pre-sized slots so the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Index-ordered map: deterministic regardless of thread count.
template <typename R>
std::vector<R> parallel_map(std::size_t n,
                            const std::function<R(std::size_t)>& fn) {
    std::vector<R> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace otv

#endif
