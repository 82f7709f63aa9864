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

// Repetition detection and matching when there is no obfuscation. Column
// histograms are invariant under row permutations, so a column of X and its
// copies in Y share one histogram; once the pattern is known, rows are
// matched by exact equality.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbmatch/model.hpp"
#include "dbmatch/rng.hpp"

namespace dbmatch {

/// |X| x cols counts stored column-major: column c is a contiguous
/// histogram of length |X|.
struct HistogramMatrix {
  unsigned alphabet = 0;
  std::size_t columns = 0;
  std::vector<std::uint32_t> counts;

  std::span<const std::uint32_t> column(std::size_t c) const {
    return std::span<const std::uint32_t>(counts).subspan(c * alphabet,
                                                          alphabet);
  }
  std::uint32_t operator()(Symbol s, std::size_t c) const {
    return counts[c * alphabet + s];
  }
};

/// Throws ConfigError on symbols outside the alphabet.
HistogramMatrix columnHistograms(const Matrix& d, unsigned alphabetSize);

/// Groups (ascending, each of size >= 2) of columns sharing one histogram.
std::vector<std::vector<std::size_t>> duplicateHistogramGroups(
    const HistogramMatrix& h);
bool hasDuplicateHistograms(const HistogramMatrix& h);

struct HistogramDetection {
  RepetitionPattern pattern;
  /// Non-empty when X's histograms are not unique; the pattern is then
  /// unreliable for the listed columns.
  std::vector<std::vector<std::size_t>> ambiguousGroups;
  bool ambiguous() const { return !ambiguousGroups.empty(); }
};

/// S-hat_j = number of Y columns whose histogram equals that of X column j.
HistogramDetection detectRepetitionsHistogram(const Matrix& x, const Matrix& y,
                                              unsigned alphabetSize);

/// Exact-sequence matching: X-bar keeps the columns with S-hat != 0, Y-bar
/// the first column of every run. X row i is matched to Y row j iff X-bar_i
/// occurs once in X-bar and once in Y-bar, at row j.
Permutation matchExact(const Matrix& x, const Matrix& y,
                       const RepetitionPattern& sHat);

struct CollisionCount {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double rate() const {
    return trials ? static_cast<double>(errors) / static_cast<double>(trials)
                  : 0.0;
  }
};

/// Does an m x n database drawn from pX have repeated column histograms?
/// Histograms are sampled directly as multinomial vectors.
bool sampleHistogramCollision(const CategoricalDistribution& pX,
                              std::size_t rows, std::size_t columns,
                              Engine& eng);

/// Fraction of `trials` databases with non-unique column histograms. Trial
/// t draws from stream (masterSeed, kTrial, point, t).
CollisionCount histogramCollisionRate(const ModelSpec& spec,
                                      std::size_t trials,
                                      std::uint64_t masterSeed,
                                      std::uint64_t point = 0);

namespace reference {

/// Pairwise comparison of all histogram columns.
HistogramDetection detectRepetitionsHistogram(const Matrix& x, const Matrix& y,
                                              unsigned alphabetSize);
/// Full O(m^2 n) row comparison.
Permutation matchExact(const Matrix& x, const Matrix& y,
                       const RepetitionPattern& sHat);

}  // namespace reference
}  // namespace dbmatch
