// Copyright 2026 The seedrec Authors.
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

#include <cstdint>
#include <functional>
#include <random>

namespace seedrec {

/// All randomness in the library flows through this engine type.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replicate stream `stream` under master seed `master`.
///
/// Splitting rule: splitmix64(master XOR splitmix64(stream + 1)). Streams are
/// addressed by replicate index, so results do not depend on how replicates
/// are scheduled over threads.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream);

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
  return Rng(stream_seed(master, stream));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  auto i = static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers, each taking
/// a contiguous block of indices. threads <= 1 runs inline.
void parallel_for(std::uint64_t count, int threads,
                  const std::function<void(std::uint64_t)>& body);

}  // namespace seedrec
