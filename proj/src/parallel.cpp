#include "mixkin/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mixkin {

int max_threads() {
    if (const char* env = std::getenv("MIXKIN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, int)>& body,
                     int threads) {
    if (n == 0) return;
    int nt = threads > 0 ? threads : max_threads();
    nt = static_cast<int>(std::min<std::size_t>(nt, n));
    if (nt <= 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 1; t < nt; ++t) {
        std::size_t b = t * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e, t] { body(b, e, t); });
    }
    body(0, std::min(n, chunk), 0);
    for (auto& th : pool) th.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads) {
    parallel_chunks(n, [&body](std::size_t b, std::size_t e, int) {
        for (std::size_t i = b; i < e; ++i) body(i);
    }, threads);
}

} // namespace mixkin
