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

#include "dbmatch/rng.hpp"

#include "dbmatch/errors.hpp"

namespace dbmatch {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t deriveSeed(std::uint64_t master, StreamId id, std::uint64_t a,
                         std::uint64_t b) {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t key : {static_cast<std::uint64_t>(id), a, b}) {
    state = h ^ key;
    h = splitmix64(state);
  }
  return h;
}

__extension__ using Wide = unsigned __int128;

std::uint64_t uniformBelow(Engine& eng, std::uint64_t bound) {
  Wide product = static_cast<Wide>(eng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<Wide>(eng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

CategoricalSampler::CategoricalSampler(std::span<const double> probabilities) {
  if (probabilities.empty()) throw ConfigError("empty categorical law");
  cdf_.resize(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf_[i] = acc;
  }
  // Zero-mass tail symbols must never be drawn, even when rounding leaves
  // acc slightly below 1.
  std::size_t lastPositive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] > 0.0) lastPositive = i;
  }
  cdf_.resize(lastPositive + 1);
  cdf_.back() = 2.0;
}

}  // namespace dbmatch
