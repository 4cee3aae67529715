#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mailmine {

// Contiguous shard bounds for n items split across at most jobs workers.
// Shards are maximal-balanced and ordered, so merging partial results in
// shard order reproduces the single-threaded result.
inline std::vector<std::pair<size_t, size_t>> shard_bounds(size_t n, unsigned jobs) {
    if (jobs == 0) jobs = 1;
    size_t shards = std::min<size_t>(jobs, n);
    std::vector<std::pair<size_t, size_t>> out;
    if (shards == 0) return out;
    size_t base = n / shards, extra = n % shards, pos = 0;
    for (size_t s = 0; s < shards; ++s) {
        size_t len = base + (s < extra ? 1 : 0);
        out.emplace_back(pos, pos + len);
        pos += len;
    }
    return out;
}

// Runs fn(shard_index, begin, end) on each shard, one thread per shard.
// fn must only write shard-local state; callers merge in shard order.
template <typename Fn>
void parallel_shards(size_t n, unsigned jobs, Fn&& fn) {
    auto bounds = shard_bounds(n, jobs);
    if (bounds.size() <= 1) {
        if (!bounds.empty()) fn(size_t{0}, bounds[0].first, bounds[0].second);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(bounds.size());
    for (size_t s = 0; s < bounds.size(); ++s)
        workers.emplace_back([&, s] { fn(s, bounds[s].first, bounds[s].second); });
    for (auto& w : workers) w.join();
}

inline unsigned default_jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

} // namespace mailmine
