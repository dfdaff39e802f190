// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <functional>

namespace flatport {

/// Worker count: FLATPORT_THREADS env var if set, else hardware concurrency.
int thread_count();

/// Runs fn(i) for i in [begin, end), statically chunked across workers.
/// Callers only write to disjoint locations, so results do not depend on the
/// thread count.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace flatport
