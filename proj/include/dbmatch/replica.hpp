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

// Noisy replica detection without distributional knowledge.
//
// Consecutive columns of Y differ in Binom(m, p0) rows when they come from
// different X columns and in Binom(m, p1) rows when they are replicas, with
// p0 > p1 for every dependent channel. The two binomial parameters are
// recovered with the method of factorial moments and the midpoint of the
// estimates is used as the decision threshold.

#pragma once

#include <cstdint>
#include <vector>

#include "dbmatch/model.hpp"

namespace dbmatch {

inline constexpr double kMixtureVarianceTolerance = 1e-12;

struct RunningDistances {
  std::vector<std::uint32_t> w;  // K_n - 1 entries in [0, rows]
  std::size_t rows = 0;
};

struct MixtureEstimate {
  double p0 = 0.0;  // larger component (independent columns)
  double p1 = 0.0;  // smaller component (replicas)
  double tau = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double u = 0.0;
};

struct MixtureParameters {
  double p0;
  double p1;
};

/// Exact p0 = 1 - sum_y pY(y)^2 and p1 = 1 - sum_x pX(x) sum_y p(y|x)^2.
MixtureParameters trueMixtureParameters(const CategoricalDistribution& pX,
                                        const ObfuscationChannel& channel);

/// Throws ConfigError for a Y with fewer than two columns.
RunningDistances runningHammingDistances(const Matrix& y);

/// Factorial-moment estimate of the two binomial parameters. Needs at least
/// three distances; throws DegenerateMixture when the sample has no
/// detectable two-component structure.
MixtureEstimate estimateMixture(const RunningDistances& w);

struct ReplicaDetection {
  std::vector<bool> isReplica;  // K_n - 1 adjacency flags
  MixtureEstimate estimate;
};

/// Flags adjacency j when W_j <= m * tau. Needs at least four columns.
ReplicaDetection detectReplicas(const Matrix& y);

inline constexpr double kConcentrationZ = 4.0;

/// True when every W_j lies within z binomial standard deviations of the
/// mean distance, i.e. the sample looks like a single component.
bool singleComponent(const RunningDistances& w, double z = kConcentrationZ);

/// detectReplicas, except that a single-component sample is reported as
/// "no replicas" (all flags false, zero estimate) instead of being fed to
/// the mixture estimator.
ReplicaDetection detectReplicasOrNone(const Matrix& y,
                                      double z = kConcentrationZ);

/// alpha = (n - #{j : S_j = 0}) / (K_n - 1). Reported raw; can exceed 1.
double mixingWeightDiagnostic(const RepetitionPattern& s);

}  // namespace dbmatch
