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

// Exact information quantities on finite laws. All logarithms are base 2.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dbmatch/model.hpp"

namespace dbmatch {

inline constexpr std::size_t kDefaultCellBudget = 10'000'000;

/// -sum p log2 p, with 0 log 0 = 0.
double entropy(std::span<const double> p);
inline double entropy(const CategoricalDistribution& p) {
  return entropy(p.values());
}

/// Binary relative entropy D(p || q) in bits. +inf when q is 0 or 1 and p
/// disagrees.
double binaryKL(double p, double q);

/// Probability table over a product of finite axes, row-major with the last
/// axis fastest.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> axisNames,
                    std::vector<std::size_t> shape, std::vector<double> p);

  std::size_t rank() const { return shape_.size(); }
  std::span<const std::size_t> shape() const { return shape_; }
  std::span<const std::string> axisNames() const { return names_; }
  std::span<const double> values() const { return p_; }

  /// Marginal over the kept axes (listed in increasing order).
  JointDistribution marginal(std::span<const std::size_t> keep) const;
  double entropy() const { return dbmatch::entropy(p_); }
  /// I(A; B) for disjoint axis groups A and B covering any subset of axes.
  double mutualInformation(std::span<const std::size_t> a,
                           std::span<const std::size_t> b) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> shape_;
  std::vector<double> p_;
};

/// Joint law of (X, Y_1, ..., Y_s) with the Y_i conditionally i.i.d. given
/// X. Throws ConfigError when the table would exceed cellBudget cells.
JointDistribution replicatedJoint(const CategoricalDistribution& pX,
                                  const ObfuscationChannel& channel,
                                  std::size_t s,
                                  std::size_t cellBudget = kDefaultCellBudget);

/// I(X; Y_1 ... Y_s) by enumeration of the (|X|^(s+1))-cell joint table.
double replicatedMutualInformation(
    const CategoricalDistribution& pX, const ObfuscationChannel& channel,
    std::size_t s, std::size_t cellBudget = kDefaultCellBudget);

/// C = I(X; Y^S | S) = sum_s pS(s) I(X; Y^s).
double matchingCapacity(const CategoricalDistribution& pX,
                        const ObfuscationChannel& channel,
                        const CategoricalDistribution& pS,
                        std::size_t cellBudget = kDefaultCellBudget);

/// (1 - pS(0)) H(X): the capacity without obfuscation.
double noObfuscationCapacity(const CategoricalDistribution& pX,
                             const CategoricalDistribution& pS);

/// H(Y | X) for the channel driven by pX.
double conditionalEntropy(const CategoricalDistribution& pX,
                          const ObfuscationChannel& channel);

/// Union/Chernoff bound on the replica detection error:
/// (K-1) [2^{-m D(tau||p0)} + 2^{-m D(1-tau||1-p1)}].
/// Requires p1 < tau < p0.
double replicaErrorBound(std::size_t totalColumns, std::size_t rows,
                         double tau, double p0, double p1);

/// Leading term of the probability that the n column histograms of an
/// m-row uniform database are not all distinct.
double histogramCollisionEstimate(std::size_t columns, double rows,
                                  unsigned alphabet);

/// log2 xi = slope * log2 m + intercept + 2 log2 n.
struct HistogramLogLinear {
  double slope;      // (1 - |X|) / 2
  double intercept;  // ((1 - |X|)/2) log2(4 pi) + (|X|/2) log2 |X|
};
HistogramLogLinear histogramLogLinear(unsigned alphabet);

}  // namespace dbmatch
