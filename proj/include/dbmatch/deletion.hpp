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

// Seeded deletion detection.
//
// Column j of the cross Hamming matrix L(Phi) between G1 and the remapped,
// replica-pruned G2 has one entry drawn with parameter q1(Phi) (the row of
// the source column) and n-1 entries drawn with q0(Phi). When the remapping
// is useful (q0 != q1) that entry is an outlier of |L - mean(L)|.
//
// Two detectors are provided: a fixed asymptotic threshold on the absolute
// deviations, and a ratio test on the top two order statistics of each
// column that works at small n.

#pragma once

#include <cstdint>
#include <vector>

#include "dbmatch/model.hpp"

namespace dbmatch {

inline constexpr std::size_t kMaxRemapAlphabet = 8;
inline constexpr double kDefaultRatioThreshold = 1.5;

/// Bijection on the alphabet; map[a] is the image of symbol a.
struct Remapping {
  std::vector<Symbol> map;
  bool isIdentity() const;
  friend bool operator==(const Remapping&, const Remapping&) = default;
};

/// All |X|! remappings in lexicographic order (identity first). Throws
/// ConfigError for alphabets above kMaxRemapAlphabet.
std::vector<Remapping> symmetryGroup(unsigned alphabetSize);

/// Matrix with every alphabet symbol replaced by its image.
Matrix applyRemapping(const Matrix& g, const Remapping& phi);

/// Keeps the first column of every replica run (flags from replica
/// detection, K_n - 1 entries).
Matrix removeExtraReplicas(const Matrix& g2, const std::vector<bool>& isReplica);

struct SeedHammingParameters {
  double q0;  // independent columns
  double q1;  // matched columns
};
/// q0(Phi) = 1 - sum_x pX(x) pY(Phi^-1 x), q1(Phi) = 1 - sum_x pXY(x, Phi^-1 x):
/// the mismatch probabilities of G1 against Phi(G2).
SeedHammingParameters seedHammingParameters(const CategoricalDistribution& pX,
                                            const ObfuscationChannel& channel,
                                            const Remapping& phi);

struct DeviationMatrix {
  std::size_t n = 0;       // rows: columns of G1
  std::size_t kTilde = 0;  // columns: retained columns of G2
  std::vector<std::uint32_t> l;  // row-major n x kTilde
  double mu = 0.0;
  std::vector<double> m;  // |l - mu|, row-major

  std::uint32_t hamming(std::size_t i, std::size_t j) const {
    return l[i * kTilde + j];
  }
  double deviation(std::size_t i, std::size_t j) const {
    return m[i * kTilde + j];
  }
};

DeviationMatrix deviationMatrix(const Matrix& g1, const Matrix& g2,
                                const Remapping& phi);

/// 2 Lambda^{2/3} (log2 n)^{1/3}.
double asymptoticThreshold(std::size_t seedCount, std::size_t n);

struct DeletionDetection {
  std::vector<std::size_t> retained;     // I_R, 0-based ascending, unique
  std::vector<std::size_t> columnToRow;  // per G2 column, the chosen G1 column
  std::size_t remapIndex = 0;            // position in symmetryGroup()
  Remapping remap;
  double mu = 0.0;
  std::vector<double> outlierScores;  // per G2 column, deviation of chosen row
  double threshold = 0.0;             // tau_n or the ratio threshold
  double ratioStatistic = 0.0;        // mean R_(n) / mean R_(n-1); modified only
};

/// Fixed-threshold detector. A column's retained row is the unique row whose
/// deviation exceeds tau_n. Remappings leaving some column without such a
/// row are skipped; a column with two or more throws MisdetectionError.
/// Throws NoUsefulRemapping when the sweep is exhausted.
DeletionDetection detectDeletionsAsymptotic(const Matrix& g1,
                                            const Matrix& g2,
                                            unsigned alphabetSize);

struct OrderStatisticRatios {
  std::vector<double> top;     // R_(n),j  = T_(n) / T_(n-1)
  std::vector<double> second;  // R_(n-1),j = T_(n-1) / T_(n-2)
};

/// Ratios of the largest order statistics of each deviation column.
/// A zero denominator gives numerator + 1 (or 1 when both are zero).
OrderStatisticRatios orderStatisticRatios(const DeviationMatrix& dev);

/// Ratio-test detector: the first remapping with
/// mean(R_(n)) >= ratioThreshold * mean(R_(n-1)) is used and each column
/// contributes its argmax row (lowest index on ties).
DeletionDetection detectDeletionsModified(
    const Matrix& g1, const Matrix& g2, unsigned alphabetSize,
    double ratioThreshold = kDefaultRatioThreshold);

}  // namespace dbmatch
