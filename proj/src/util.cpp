#include "smoothlab/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace smoothlab {

size_t worker_count() {
    static const size_t cached = [] {
        size_t n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        if (const char* env = std::getenv("SMOOTHLAB_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) n = std::min(n, size_t(v));
        }
        return n;
    }();
    return cached;
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    if (count == 0) return;
    size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            size_t lo = count * t / workers;
            size_t hi = count * (t + 1) / workers;
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace smoothlab
