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

#include "dbmatch/replica.hpp"

#include <algorithm>
#include <random>

#include "dbmatch/errors.hpp"
#include "dbmatch/gen.hpp"
#include "gtest/gtest.h"

namespace dbmatch {
namespace {

RunningDistances binomialMixture(std::mt19937_64& eng, std::size_t samples,
                                 std::uint32_t m, double p0, double p1,
                                 double weight) {
  std::binomial_distribution<std::uint32_t> b0(m, p0), b1(m, p1);
  std::bernoulli_distribution pick(weight);
  RunningDistances w;
  w.rows = m;
  for (std::size_t i = 0; i < samples; ++i) {
    w.w.push_back(pick(eng) ? b0(eng) : b1(eng));
  }
  return w;
}

TEST(RunningHammingTest, SmallCases) {
  Matrix same(3, 2, std::vector<Symbol>{1, 1, 0, 0, 4, 4});
  EXPECT_EQ(runningHammingDistances(same).w, (std::vector<std::uint32_t>{0}));
  Matrix flip(2, 2, std::vector<Symbol>{0, 1, 1, 0});
  auto w = runningHammingDistances(flip);
  EXPECT_EQ(w.w, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(w.rows, 2u);
  EXPECT_THROW(runningHammingDistances(Matrix(3, 1)), ConfigError);
}

TEST(RunningHammingTest, PlantedNoiselessReplica) {
  auto eng = makeStream(1, StreamId::kDatabase);
  auto y = sampleDatabase(1000, 20, CategoricalDistribution::uniform(5), eng);
  for (std::size_t r = 0; r < 1000; ++r) y(r, 5) = y(r, 4);
  auto w = runningHammingDistances(y).w;
  ASSERT_EQ(w.size(), 19u);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j == 4) {
      EXPECT_EQ(w[j], 0u);
    } else {
      EXPECT_GT(w[j], 700u);
    }
  }
}

TEST(MixtureTest, RecoversComponents) {
  std::mt19937_64 eng(3);
  auto w = binomialMixture(eng, 1000, 10'000, 0.8, 0.35, 0.5);
  auto est = estimateMixture(w);
  EXPECT_NEAR(est.p0, 0.8, 0.02);
  EXPECT_NEAR(est.p1, 0.35, 0.02);
  EXPECT_NEAR(est.tau, (est.p0 + est.p1) / 2, 1e-15);
  EXPECT_GE(est.p0, est.p1);
}

TEST(MixtureTest, DegenerateInputs) {
  RunningDistances equal{{50, 50, 50, 50, 50}, 100};
  EXPECT_THROW(estimateMixture(equal), DegenerateMixture);
  RunningDistances shortW{{1, 2}, 100};
  EXPECT_THROW(estimateMixture(shortW), DegenerateMixture);
}

TEST(MixtureTest, SingleComponentUsuallyDegenerate) {
  std::mt19937_64 eng(4);
  int degenerate = 0;
  for (int t = 0; t < 100; ++t) {
    auto w = binomialMixture(eng, 100, 1000, 0.6, 0.6, 0.5);
    try {
      estimateMixture(w);
    } catch (const DegenerateMixture&) {
      ++degenerate;
    }
  }
  // Half the samples have negative spread; the rest mostly fail the
  // discriminant. Only require the signal to be common.
  EXPECT_GE(degenerate, 40);
}

TEST(MixtureTest, TrueParametersSeparate) {
  std::mt19937_64 eng(5);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + t % 5;
    std::vector<double> px(k);
    double s = 0;
    for (auto& v : px) s += (v = e(eng));
    for (auto& v : px) v /= s;
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (auto& r : rows) {
      double rs = 0;
      for (auto& v : r) rs += (v = e(eng));
      for (auto& v : r) v /= rs;
    }
    auto mp = trueMixtureParameters(CategoricalDistribution(px),
                                    ObfuscationChannel(rows));
    EXPECT_GT(mp.p0, mp.p1);
  }
}

TEST(MixtureTest, SymmetricChannelClosedForm) {
  const double eps = 0.2;
  auto mp = trueMixtureParameters(CategoricalDistribution::uniform(5),
                                  ObfuscationChannel::symmetric(5, eps));
  EXPECT_NEAR(mp.p0, 0.8, 1e-14);
  EXPECT_NEAR(mp.p1, 1 - (1 - eps) * (1 - eps) - eps * eps / 4, 1e-14);
  EXPECT_NEAR(mp.p1, 0.35, 1e-14);
}

TEST(DetectReplicasTest, SingleNoiselessDuplicate) {
  auto eng = makeStream(6, StreamId::kDatabase);
  auto x = sampleDatabase(500, 12, CategoricalDistribution::uniform(5), eng);
  std::vector<std::uint32_t> s(12, 1);
  s[7] = 2;
  auto y = applyRepetitionAndNoise(x, RepetitionPattern(s),
                                   ObfuscationChannel::identity(5),
                                   Permutation::identity(500), eng);
  auto flags = detectReplicas(y).isReplica;
  std::vector<bool> expected(12, false);
  expected[7] = true;
  EXPECT_EQ(flags, expected);
}

TEST(DetectReplicasTest, NoisyConfigurationIsExact) {
  auto spec = deletionDuplicationSpec(1000, 100, 5, 0.2, 0.3, 0.2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pair = generatePair(spec, 0, seed);
    EXPECT_EQ(detectReplicas(pair.y).isReplica, replicaFlags(pair.pattern));
  }
}

TEST(DetectReplicasTest, PermutationInvariant) {
  auto spec = deletionDuplicationSpec(300, 60, 5, 0.3, 0.3, 0.2);
  auto pair = generatePair(spec, 0, 17);
  auto eng = makeStream(17, StreamId::kPermutation, 1);
  auto pi = samplePermutation(pair.y.rows(), eng);
  Matrix shuffled(pair.y.rows(), pair.y.cols());
  for (std::size_t r = 0; r < pair.y.rows(); ++r) {
    std::ranges::copy(pair.y.row(r), shuffled.row(pi[r]).begin());
  }
  EXPECT_EQ(detectReplicas(pair.y).isReplica,
            detectReplicas(shuffled).isReplica);
}

TEST(DetectReplicasTest, NeedsFourColumns) {
  EXPECT_THROW(detectReplicas(Matrix(10, 3)), ConfigError);
}

TEST(DetectReplicasTest, FallbackReportsNoReplicas) {
  auto eng = makeStream(7, StreamId::kDatabase);
  int fallback = 0;
  for (int t = 0; t < 20; ++t) {
    auto y = sampleDatabase(256, 25, CategoricalDistribution::uniform(5), eng);
    auto d = detectReplicasOrNone(y);
    if (std::ranges::none_of(d.isReplica, [](bool b) { return b; })) {
      ++fallback;
    }
  }
  EXPECT_GE(fallback, 19);
  // With replicas present the fallback is not taken.
  auto spec = deletionDuplicationSpec(256, 25, 5, 0.2, 0.3, 0.2);
  auto pair = generatePair(spec, 0, 3);
  ASSERT_GT(pair.pattern.maxCount(), 1u);
  EXPECT_FALSE(singleComponent(runningHammingDistances(pair.y)));
  EXPECT_EQ(detectReplicasOrNone(pair.y).isReplica,
            replicaFlags(pair.pattern));
}

TEST(MixingWeightTest, Values) {
  RepetitionPattern ones(std::vector<std::uint32_t>(10, 1));
  EXPECT_NEAR(mixingWeightDiagnostic(ones), 10.0 / 9.0, 1e-15);
  auto eng = makeStream(8, StreamId::kPattern);
  auto s = sampleRepetitionPattern(CategoricalDistribution({0.3, 0.5, 0.2}),
                                   100'000, eng);
  EXPECT_NEAR(mixingWeightDiagnostic(s), 0.7 / 0.9, 0.01);
  RepetitionPattern heavy({0, 0, 0, 40, 0});
  EXPECT_LT(mixingWeightDiagnostic(heavy), 0.05);
}

}  // namespace
}  // namespace dbmatch
