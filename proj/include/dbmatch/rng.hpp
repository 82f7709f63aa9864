// Copyright 2026 The dbmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reproducible random streams.
//
// A 64-bit master seed expands into independent named streams. The seed of a
// stream is
//
//   splitmix64 chain over (master, stream id, a, b)
//
// where (a, b) are caller-chosen indices, e.g. (grid point, trial). Two
// streams share state only if every key matches, so experiments give the
// same answer no matter how trials are distributed over threads.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dbmatch {

using Engine = std::mt19937_64;

enum class StreamId : std::uint64_t {
  kDatabase = 1,
  kPattern = 2,
  kPermutation = 3,
  kNoise = 4,
  kSeeds = 5,
  kTrial = 6,
};

std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t deriveSeed(std::uint64_t master, StreamId id,
                         std::uint64_t a = 0, std::uint64_t b = 0);

inline Engine makeStream(std::uint64_t master, StreamId id,
                         std::uint64_t a = 0, std::uint64_t b = 0) {
  return Engine(deriveSeed(master, id, a, b));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
/// rejection, so the result does not depend on the standard library.
std::uint64_t uniformBelow(Engine& eng, std::uint64_t bound);

/// Inverse-CDF sampler over {0, ..., size-1}.
class CategoricalSampler {
 public:
  CategoricalSampler() = default;
  explicit CategoricalSampler(std::span<const double> probabilities);

  std::size_t operator()(Engine& eng) const {
    const double u = uniform01(eng);
    const std::size_t last = cdf_.size() - 1;
    std::size_t i = 0;
    while (i < last && u >= cdf_[i]) ++i;
    return i;
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace dbmatch
