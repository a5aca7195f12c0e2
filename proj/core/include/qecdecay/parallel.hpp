// Copyright 2026 The qecdecay Authors
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
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qecd {

/// Samples are grouped into fixed-size blocks; each block is accumulated in
/// sample order and the block partials are summed in block order. The result
/// therefore does not depend on how many threads ran the blocks.
inline constexpr std::size_t kReductionBlock = 256;

/// `accumulate(sample_index, acc)` adds one sample into `acc`. `Acc` must be
/// default-constructible to its zero and support `+=`.
template <typename Acc, typename Fn>
Acc deterministic_reduce(std::size_t samples, unsigned threads, Fn accumulate) {
  const std::size_t blocks = (samples + kReductionBlock - 1) / kReductionBlock;
  std::vector<Acc> partial(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
      Acc acc{};
      const std::size_t end = std::min(samples, (b + 1) * kReductionBlock);
      for (std::size_t i = b * kReductionBlock; i < end; ++i) {
        accumulate(i, acc);
      }
      partial[b] = std::move(acc);
    }
  };
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(blocks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  Acc total{};
  for (const Acc& p : partial) {
    total += p;
  }
  return total;
}

}  // namespace qecd
