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

// Hand-built models shared by the unit and acceptance tests.

#pragma once

#include <cmath>
#include <vector>

#include "dbmatch/model.hpp"

namespace instances {

// Ten columns, the 4th, 6th and 10th deleted, no replicas.
inline dbmatch::RepetitionPattern tenColumnPattern() {
  return dbmatch::RepetitionPattern({1, 1, 1, 0, 1, 0, 1, 1, 1, 0});
}

// |X| = 4 with p_X = (a, b, a, b) and a channel that keeps the symbol with
// probability 0.08 and otherwise shifts it by one. Under the identity
// remapping q1 = 0.92 exactly and
//   q0 = 1 - [0.08 (2a^2 + 2b^2) + 0.92 * 4ab] = 0.76
// once a - 1/4 = sqrt(0.01 / 3.36).
inline dbmatch::ModelSpec shiftChannelSpec(std::size_t rows,
                                           std::size_t columns) {
  const double d = std::sqrt(0.01 / 3.36);
  const double a = 0.25 + d, b = 0.25 - d;
  const double stay = 0.08;
  std::vector<std::vector<double>> ch(4, std::vector<double>(4, 0.0));
  for (std::size_t x = 0; x < 4; ++x) {
    ch[x][x] = stay;
    ch[x][(x + 1) % 4] = 1.0 - stay;
  }
  dbmatch::ModelSpec spec;
  spec.rows = rows;
  spec.columns = columns;
  spec.alphabet = dbmatch::Alphabet(4);
  spec.pX = dbmatch::CategoricalDistribution({a, b, a, b});
  spec.channel = dbmatch::ObfuscationChannel(ch);
  spec.pS = dbmatch::CategoricalDistribution({0.3, 0.7});
  spec.sMax = 1;
  return spec;
}

// |X| = 3, uniform p_X, channel trace 1: the identity remapping carries no
// signal but swapping symbols 0 and 1 does.
inline dbmatch::ModelSpec unitTraceSpec(std::size_t rows,
                                        std::size_t columns) {
  const double hi = 2.0 / 3.0, lo = 1.0 / 6.0;
  dbmatch::ModelSpec spec;
  spec.rows = rows;
  spec.columns = columns;
  spec.alphabet = dbmatch::Alphabet(3);
  spec.pX = dbmatch::CategoricalDistribution::uniform(3);
  spec.channel = dbmatch::ObfuscationChannel(
      {{lo, hi, lo}, {hi, lo, lo}, {lo, lo, hi}});
  spec.pS = dbmatch::CategoricalDistribution({0.3, 0.7});
  spec.sMax = 1;
  return spec;
}

}  // namespace instances
