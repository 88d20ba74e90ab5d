// Copyright 2026 The ect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ect {

// requested <= 0 selects the hardware concurrency (at least 1).
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [begin, end) into one contiguous block per worker and runs
// fn(lo, hi) on each. Every output element must be owned by exactly one
// block and accumulated sequentially inside it; under that contract the
// result is bit-identical for every thread count. If a block throws, the
// exception from the lowest block index is rethrown.
template <typename Fn>
void parallel_blocks(int64_t begin, int64_t end, int threads, Fn&& fn) {
  const int64_t total = end - begin;
  if (total <= 0) return;
  int workers = std::min<int64_t>(resolve_threads(threads), total);
  if (workers <= 1) {
    fn(begin, end);
    return;
  }
  const int64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int64_t lo = begin + w * chunk;
    const int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, &errors, w, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ect
