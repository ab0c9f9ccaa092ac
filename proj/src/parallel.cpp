#include "otv/parallel.hpp"

#include <cstdlib>
#include <string>

namespace otv {

unsigned thread_count() {
    if (const char* env = std::getenv("OTV_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

}  // namespace otv
