#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace catcode {

// Worker count: CC_THREADS caps it, default hardware parallelism, always >= 1.
inline unsigned worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned long>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Runs fn(thread_index, thread_count) on each worker. Work must be split by
// index inside fn (strided splits keep pair scans balanced); results are
// reduced by the caller after join, so the outcome is independent of the
// actual thread count.
template <class Fn>
void run_workers(Fn&& fn) {
    unsigned t = worker_threads();
    if (t <= 1) {
        fn(0u, 1u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned i = 0; i < t; ++i) pool.emplace_back([&fn, i, t] { fn(i, t); });
    for (auto& th : pool) th.join();
}

// splitmix64: counter-based stream splitter for per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace catcode
