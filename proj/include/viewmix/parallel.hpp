// Copyright 2026 the viewmix authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace viewmix {

// Resolves 0 (auto) to the hardware thread count.
int resolve_threads(int requested);

// Runs fn(0..n-1) across up to `threads` workers. Work items must not share
// mutable state; the first exception thrown by any item is rethrown on the
// calling thread after all workers join.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace viewmix
