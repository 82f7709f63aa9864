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

#include "dbmatch/gen.hpp"

#include <utility>

#include "dbmatch/errors.hpp"

namespace dbmatch {

Matrix sampleDatabase(std::size_t rows, std::size_t cols,
                      const CategoricalDistribution& pX, Engine& eng) {
  const CategoricalSampler draw(pX.values());
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto& cell : out.row(r)) cell = static_cast<Symbol>(draw(eng));
  }
  return out;
}

Matrix sampleDatabase(const ModelSpec& spec, Engine& eng) {
  return sampleDatabase(spec.rows, spec.columns, spec.pX, eng);
}

RepetitionPattern sampleRepetitionPattern(const CategoricalDistribution& pS,
                                          std::size_t n, Engine& eng) {
  const CategoricalSampler draw(pS.values());
  std::vector<std::uint32_t> s(n);
  for (auto& v : s) v = static_cast<std::uint32_t>(draw(eng));
  return RepetitionPattern(std::move(s));
}

Permutation samplePermutation(std::size_t m, Engine& eng) {
  auto p = Permutation::identity(m);
  for (std::size_t i = m; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniformBelow(eng, i));
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

Matrix applyRepetitionAndNoise(const Matrix& x, const RepetitionPattern& s,
                               const ObfuscationChannel& channel,
                               const Permutation& sigma, Engine& eng) {
  if (s.size() != x.cols()) {
    throw ConfigError("repetition pattern length differs from column count");
  }
  if (sigma.size() != x.rows()) {
    throw ConfigError("permutation length differs from row count");
  }
  const std::size_t k = s.totalColumns();
  if (k == 0) throw ConfigError("all columns deleted (K_n = 0)");

  std::vector<CategoricalSampler> rowSampler;
  rowSampler.reserve(channel.size());
  for (std::size_t a = 0; a < channel.size(); ++a) {
    rowSampler.emplace_back(channel.row(a));
  }

  Matrix y(x.rows(), k);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto src = x.row(i);
    auto dst = y.row(sigma[i]);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto& noise = rowSampler[src[j]];
      for (std::uint32_t r = 0; r < s[j]; ++r) {
        dst[pos++] = static_cast<Symbol>(noise(eng));
      }
    }
  }
  return y;
}

SeedPair generateSeeds(const ModelSpec& spec, const RepetitionPattern& s,
                       std::size_t seedCount, Engine& eng) {
  if (seedCount < 1) throw ConfigError("seed count must be at least 1");
  SeedPair seeds;
  seeds.g1 = sampleDatabase(seedCount, spec.columns, spec.pX, eng);
  seeds.g2 = applyRepetitionAndNoise(seeds.g1, s, spec.channel,
                                     Permutation::identity(seedCount), eng);
  return seeds;
}

DatabasePair generatePair(const ModelSpec& spec, std::size_t seedCount,
                          std::uint64_t masterSeed) {
  requireValidModel(spec);
  DatabasePair pair;
  auto dbEng = makeStream(masterSeed, StreamId::kDatabase);
  auto patEng = makeStream(masterSeed, StreamId::kPattern);
  auto permEng = makeStream(masterSeed, StreamId::kPermutation);
  auto noiseEng = makeStream(masterSeed, StreamId::kNoise);

  pair.x = sampleDatabase(spec, dbEng);
  pair.pattern = sampleRepetitionPattern(spec.pS, spec.columns, patEng);
  pair.sigma = samplePermutation(spec.rows, permEng);
  pair.y = applyRepetitionAndNoise(pair.x, pair.pattern, spec.channel,
                                   pair.sigma, noiseEng);
  if (seedCount > 0) {
    auto seedEng = makeStream(masterSeed, StreamId::kSeeds);
    pair.seeds = generateSeeds(spec, pair.pattern, seedCount, seedEng);
  }
  return pair;
}

}  // namespace dbmatch
