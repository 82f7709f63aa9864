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

// Row de-anonymization with an estimated model: marker placement, the
// joint-typicality decoder and the min-Delta decoder.

#pragma once

#include <span>
#include <vector>

#include "dbmatch/estimate.hpp"
#include "dbmatch/kernels.hpp"
#include "dbmatch/model.hpp"

namespace dbmatch {

/// Y with run markers from S-hat: row i, block j is Y(i, K_{j-1} .. K_j - 1).
/// A block of length zero stands for a single erasure.
class SegmentedMatrix {
 public:
  SegmentedMatrix(const Matrix& y, const RepetitionPattern& sHat);

  std::size_t rows() const { return y_->rows(); }
  std::size_t blocks() const { return pattern_->size(); }
  const RepetitionPattern& pattern() const { return *pattern_; }

  std::span<const Symbol> block(std::size_t row, std::size_t j) const {
    return y_->row(row).subspan(offsets_[j], offsets_[j + 1] - offsets_[j]);
  }
  bool isErasure(std::size_t j) const { return offsets_[j + 1] == offsets_[j]; }

  /// Materialised blocks of one row, erasures written as `erasure`.
  std::vector<std::vector<Symbol>> explicitBlocks(std::size_t row,
                                                  Symbol erasure) const;

 private:
  const Matrix* y_;
  const RepetitionPattern* pattern_;
  std::vector<std::size_t> offsets_;
};

/// Throws ConfigError when sum(S-hat) differs from Y's column count. The
/// result refers to y and sHat, which must outlive it.
SegmentedMatrix addMarkers(const Matrix& y, const RepetitionPattern& sHat);

/// -(1/n) sum_j log2 p-hat(x_j, block_j | S_j); +inf when some block is
/// impossible under the model.
double typicalityScore(std::span<const Symbol> xRow,
                       const SegmentedMatrix& y, std::size_t yRow,
                       const EstimatedModel& model);

/// Per-Y-row lookup tables feeding the blocked score kernels.
kernels::ScoreTables buildScoreTables(const SegmentedMatrix& y,
                                      const EstimatedModel& model);

/// 4 / sqrt(n).
double defaultTypicalityEpsilon(std::size_t n);

/// X row i is matched to Y row j iff j is the only Y row with
/// |H_ij - H-hat| <= epsilon; otherwise it gets kUnmatched.
Permutation deanonymizeTypicality(const Matrix& x, const SegmentedMatrix& y,
                                  const EstimatedModel& model, double epsilon);

/// Every Y row claims its argmin-Delta X row (lowest index on ties; rows
/// whose Delta is infinite everywhere claim nothing). X rows claimed by
/// exactly one Y row are matched, the rest get kUnmatched.
Permutation deanonymizeMinDelta(const Matrix& x, const SegmentedMatrix& y,
                                const EstimatedModel& model);

struct MatchResult {
  Permutation sigmaHat;
  double errorFraction = 0.0;
};

/// Fraction of rows with sigmaHat(i) != sigma(i); unmatched counts as an
/// error.
double scoreMatch(const Permutation& sigmaHat, const Permutation& sigma);

namespace reference {

/// Direct O(m^2 n) evaluation through conditionalLogProb.
Permutation deanonymizeTypicality(const Matrix& x, const SegmentedMatrix& y,
                                  const EstimatedModel& model, double epsilon);
Permutation deanonymizeMinDelta(const Matrix& x, const SegmentedMatrix& y,
                                const EstimatedModel& model);

}  // namespace reference
}  // namespace dbmatch
