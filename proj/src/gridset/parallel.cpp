/*
 * Copyright 2026 The explab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "explab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace explab {
namespace {

std::atomic<unsigned> g_limit{0};
constexpr std::size_t kChunks = 64;

}  // namespace

void set_thread_limit(unsigned n) { g_limit = n; }

unsigned thread_limit() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned lim = g_limit.load();
  return lim == 0 ? hw : std::min(lim, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t chunks = std::min(n, kChunks);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_limit(), chunks));
  auto chunk_bounds = [&](std::size_t c) {
    return std::pair<std::size_t, std::size_t>{n * c / chunks, n * (c + 1) / chunks};
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_bounds(c);
      body(b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        auto [b, e] = chunk_bounds(c);
        body(b, e);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace explab
