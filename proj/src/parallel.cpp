// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/parallel.h"

#include <cstdlib>
#include <thread>
#include <vector>

namespace flatport {

int thread_count() {
    if (const char* env = std::getenv("FLATPORT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int n = end - begin;
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = begin + w; i < end; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace flatport
