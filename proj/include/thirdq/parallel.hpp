#ifndef THIRDQ_PARALLEL_HPP
#define THIRDQ_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace thirdq {

/// Worker cap: THIRDQ_THREADS if set, otherwise all cores.
inline int max_threads() {
    static const int cap = [] {
        const char* env = std::getenv("THIRDQ_THREADS");
        const int hw = std::max(1u, std::thread::hardware_concurrency());
        if (env == nullptr) return hw;
        const int v = std::atoi(env);
        return v >= 1 ? std::min(v, hw) : hw;
    }();
    return cap;
}

/// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
/// the result is identical to the sequential loop regardless of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(max_threads(), n);
    if (workers <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, n, &fn] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace thirdq

#endif
