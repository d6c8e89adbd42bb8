#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

namespace ramweil {

// Fixed-size work blocks handed to a small thread pool. Every write lands in
// a caller-owned slot keyed by index and block partials are combined in index
// order, so results are byte-identical for any thread count.
constexpr std::uint64_t kBlock = 4096;

template <class Fn>
inline void parallelBlocks(std::uint64_t n, int threads, Fn&& body) {
    std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    if (threads <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) body(b, b * kBlock, std::min(n, (b + 1) * kBlock));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            body(b, b * kBlock, std::min(n, (b + 1) * kBlock));
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min<std::uint64_t>(threads, nblocks);
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// fn(i) -> element written to slot i by exactly one worker.
template <class Fn>
inline void parallelFor(std::uint64_t n, int threads, Fn&& fn) {
    parallelBlocks(n, threads, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
}

// Deterministic sum of fn(i) over [0, n): blocks summed left to right
// internally and combined left to right.
template <class Fn>
inline std::complex<double> blockSum(std::uint64_t n, int threads, Fn&& fn) {
    std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partial(nblocks, {0.0, 0.0});
    parallelBlocks(n, threads, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t i = lo; i < hi; ++i) acc += fn(i);
        partial[b] = acc;
    });
    std::complex<double> total{0.0, 0.0};
    for (auto& p : partial) total += p;
    return total;
}

}  // namespace ramweil
