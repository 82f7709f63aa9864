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

#include "dbmatch/model.hpp"

#include <algorithm>

#include "dbmatch/errors.hpp"
#include "gtest/gtest.h"

namespace dbmatch {
namespace {

bool hasViolation(const std::vector<std::string>& v, const std::string& what) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) {
    return s.find(what) != std::string::npos;
  });
}

TEST(ModelTest, DefaultConfigurationIsValid) {
  auto spec = deletionDuplicationSpec(100, 100, 5, 0.2, 0.3, 0.2);
  EXPECT_TRUE(validateModel(spec).empty());
  EXPECT_NO_THROW(requireValidModel(spec));
}

TEST(ModelTest, UnnormalizedPxIsReported) {
  auto spec = deletionDuplicationSpec(10, 10, 5, 0.2, 0.3, 0.2);
  spec.pX = CategoricalDistribution({0.3, 0.3, 0.1, 0.1, 0.1});
  auto v = validateModel(spec);
  EXPECT_TRUE(hasViolation(v, "p_x not normalized"));
  EXPECT_THROW(requireValidModel(spec), ConfigError);
}

TEST(ModelTest, SupportBeyondSMaxIsReported) {
  auto spec = deletionDuplicationSpec(10, 10, 5, 0.2, 0.3, 0.2);
  spec.pS = CategoricalDistribution({0.2, 0.5, 0.2, 0.1});
  EXPECT_TRUE(hasViolation(validateModel(spec), "support exceeds s_max"));
  spec.sMax = 3;
  EXPECT_TRUE(validateModel(spec).empty());
}

TEST(ModelTest, ChannelRowsMustBeDistributions) {
  auto spec = deletionDuplicationSpec(10, 10, 3, 0.2, 0.3, 0.2);
  spec.channel = ObfuscationChannel({{1.0, 0.0, 0.0},
                                     {0.5, 0.6, 0.0},
                                     {0.0, 0.0, 1.0}});
  EXPECT_TRUE(hasViolation(validateModel(spec), "channel row 1"));
}

TEST(ModelTest, AlphabetAndDimensionChecks) {
  auto spec = deletionDuplicationSpec(10, 10, 5, 0.2, 0.3, 0.2);
  spec.alphabet = Alphabet(4);
  auto v = validateModel(spec);
  EXPECT_TRUE(hasViolation(v, "p_x: length"));
  EXPECT_TRUE(hasViolation(v, "channel: dimension"));
  spec = deletionDuplicationSpec(0, 0, 5, 0.2, 0.3, 0.2);
  v = validateModel(spec);
  EXPECT_TRUE(hasViolation(v, "m:"));
  EXPECT_TRUE(hasViolation(v, "n:"));
}

TEST(ModelTest, SymmetricChannelRows) {
  auto ch = ObfuscationChannel::symmetric(5, 0.2);
  for (std::size_t x = 0; x < 5; ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < 5; ++y) {
      EXPECT_DOUBLE_EQ(ch(x, y), x == y ? 0.8 : 0.05);
      sum += ch(x, y);
    }
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
  EXPECT_EQ(ObfuscationChannel::identity(3),
            ObfuscationChannel::symmetric(3, 0.0));
}

TEST(ModelTest, ModelJsonRoundTrip) {
  auto spec = deletionDuplicationSpec(64, 25, 4, 0.1, 0.3, 0.2);
  auto back = modelSpecFromJson(toJson(spec));
  EXPECT_EQ(back.rows, spec.rows);
  EXPECT_EQ(back.columns, spec.columns);
  EXPECT_EQ(back.alphabet, spec.alphabet);
  EXPECT_EQ(back.channel, spec.channel);
  EXPECT_EQ(back.sMax, spec.sMax);
  EXPECT_THROW(modelSpecFromJson(nlohmann::json{{"m", 3}}), ConfigError);
}

TEST(ModelTest, AlphabetErasureIsOutsideTheAlphabet) {
  Alphabet a(5);
  EXPECT_EQ(a.erasure(), 5);
  EXPECT_FALSE(a.contains(a.erasure()));
  EXPECT_TRUE(a.contains(4));
}

TEST(PatternTest, Accessors) {
  RepetitionPattern s({1, 2, 1, 0, 1, 1});
  EXPECT_EQ(s.totalColumns(), 6u);
  EXPECT_EQ(s.retainedCount(), 5u);
  EXPECT_EQ(s.retainedIndices(), (std::vector<std::size_t>{0, 1, 2, 4, 5}));
  EXPECT_EQ(s.runOffsets(), (std::vector<std::size_t>{0, 1, 3, 4, 4, 5, 6}));
  EXPECT_EQ(s.maxCount(), 2u);
  EXPECT_EQ(replicaFlags(s),
            (std::vector<bool>{false, true, false, false, false}));
}

TEST(PatternTest, ReplicaFlagsHaveKMinusOneEntries) {
  RepetitionPattern s({3, 0, 0, 2});
  EXPECT_EQ(replicaFlags(s),
            (std::vector<bool>{true, true, false, true}));
}

TEST(PermutationTest, InverseAndComposition) {
  Permutation p({1, 5, 3, 0, 2, 4});
  ASSERT_TRUE(p.isBijection());
  auto inv = p.inverse();
  EXPECT_EQ(p.compose(inv), Permutation::identity(6));
  EXPECT_EQ(inv.compose(p), Permutation::identity(6));
  auto one = p.toOneBased();
  EXPECT_EQ(one.front(), 2u);
  EXPECT_EQ(Permutation::fromOneBased(one), p);
}

TEST(PermutationTest, UnmatchedIsNotABijection) {
  auto u = Permutation::unmatched(3);
  EXPECT_FALSE(u.isBijection());
  EXPECT_EQ(u.toOneBased(), (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_THROW(u.inverse(), ConfigError);
  EXPECT_FALSE(Permutation({0, 0, 1}).isBijection());
}

TEST(MatrixTest, SelectAndTranspose) {
  Matrix m(2, 3, std::vector<Symbol>{0, 1, 2, 3, 4, 0});
  EXPECT_EQ(m.column(1), (std::vector<Symbol>{1, 4}));
  std::vector<std::size_t> cols{2, 0};
  auto sel = m.selectColumns(cols);
  EXPECT_EQ(sel, Matrix(2, 2, std::vector<Symbol>{2, 0, 0, 3}));
  EXPECT_EQ(m.transposed(), (std::vector<Symbol>{0, 3, 1, 4, 2, 0}));
  EXPECT_THROW(Matrix(2, 2, std::vector<Symbol>{1, 2, 3}), ConfigError);
}

}  // namespace
}  // namespace dbmatch
