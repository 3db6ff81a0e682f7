#include "tricap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace tricap {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }

void parallel_for(int begin, int end, const std::function<void(int, int)>& body) {
    const int n = end - begin;
    const int workers = std::min(thread_count(), std::max(1, n));
    if (workers == 1 || n < 128) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        const int b = begin + w * chunk;
        const int e = std::min(end, b + chunk);
        if (b < e) pool.emplace_back(body, b, e);
    }
    body(begin, std::min(end, begin + chunk));
    for (auto& t : pool) t.join();
}

} // namespace tricap
