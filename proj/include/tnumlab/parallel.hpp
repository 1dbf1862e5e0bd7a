// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tnumlab {

/// Worker count for sweeps: hardware concurrency, capped by TNUMLAB_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TNUMLAB_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (...) {
        }
    }
    return n;
}

/// Splits [0, n) into contiguous chunks, reduces each chunk into its own
/// accumulator, and merges the chunk results in index order. The result is
/// independent of the worker count as long as `merge` respects that order.
template <typename Acc, typename Body, typename Merge>
Acc parallel_reduce(std::size_t n, const Acc& init, Body body, Merge merge, unsigned workers = worker_count()) {
    workers = std::max(1u, workers);
    const std::size_t chunks = std::min<std::size_t>(n == 0 ? 1 : n, std::size_t{workers} * 8);
    std::vector<Acc> parts(chunks, init);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = n * c / chunks;
        const std::size_t end = n * (c + 1) / chunks;
        body(begin, end, parts[c]);
    };
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    Acc out = init;
    for (auto& part : parts) merge(out, std::move(part));
    return out;
}

} // namespace tnumlab
