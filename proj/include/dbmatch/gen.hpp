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

// Sampling of anonymized / labeled database pairs and their seeds.

#pragma once

#include <cstdint>

#include "dbmatch/model.hpp"
#include "dbmatch/rng.hpp"

namespace dbmatch {

/// Seed matrices sharing the pair's repetition pattern. Row t of g1 is
/// matched with row t of g2.
struct SeedPair {
  Matrix g1;  // Lambda x n
  Matrix g2;  // Lambda x K_n
  std::size_t size() const { return g1.rows(); }
};

struct DatabasePair {
  Matrix x;  // m x n
  Matrix y;  // m x K_n
  RepetitionPattern pattern;
  Permutation sigma;  // row i of x <-> row sigma[i] of y
  SeedPair seeds;
};

/// rows x cols matrix of i.i.d. draws from pX.
Matrix sampleDatabase(std::size_t rows, std::size_t cols,
                      const CategoricalDistribution& pX, Engine& eng);
Matrix sampleDatabase(const ModelSpec& spec, Engine& eng);

RepetitionPattern sampleRepetitionPattern(const CategoricalDistribution& pS,
                                          std::size_t n, Engine& eng);

/// Uniform permutation of [m] (Fisher-Yates).
Permutation samplePermutation(std::size_t m, Engine& eng);

/// Y with column j of X repeated S_j times (contiguous, in column order),
/// every copy independently passed through the channel, and X row i placed
/// at Y row sigma[i]. Throws ConfigError when K_n = 0.
Matrix applyRepetitionAndNoise(const Matrix& x, const RepetitionPattern& s,
                               const ObfuscationChannel& channel,
                               const Permutation& sigma, Engine& eng);

/// Fresh G1 ~ pX and G2 derived from it through the same pattern with
/// independent channel noise and identity row alignment.
SeedPair generateSeeds(const ModelSpec& spec, const RepetitionPattern& s,
                       std::size_t seedCount, Engine& eng);

/// Full pair from a master seed; each component draws from its own named
/// stream. seedCount may be 0 to skip seed generation.
DatabasePair generatePair(const ModelSpec& spec, std::size_t seedCount,
                          std::uint64_t masterSeed);

}  // namespace dbmatch
