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

#include "dbmatch/matching.hpp"

#include <cmath>
#include <limits>

#include "dbmatch/errors.hpp"

namespace dbmatch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void checkShapes(const Matrix& x, const SegmentedMatrix& y,
                 const EstimatedModel& model) {
  if (x.cols() != y.blocks()) {
    throw ConfigError("X column count differs from the pattern length");
  }
  if (model.alphabetSize() == 0) throw ConfigError("empty estimated model");
  for (Symbol v : x.data()) {
    if (v >= model.alphabetSize()) {
      throw ConfigError("X symbol outside the model alphabet");
    }
  }
}

// X row i gets j when j is its only claimant.
Permutation resolveClaims(std::size_t xRows,
                          const std::vector<std::vector<std::uint32_t>>& claims) {
  std::vector<std::uint32_t> count(xRows, 0);
  auto sigma = Permutation::unmatched(xRows);
  for (std::size_t j = 0; j < claims.size(); ++j) {
    for (auto i : claims[j]) {
      ++count[i];
      sigma[i] = static_cast<std::uint32_t>(j);
    }
  }
  for (std::size_t i = 0; i < xRows; ++i) {
    if (count[i] != 1) sigma[i] = Permutation::kUnmatched;
  }
  return sigma;
}

double deltaOf(double center, double score) {
  return std::isinf(score) ? kInf : std::abs(center - score);
}

}  // namespace

SegmentedMatrix::SegmentedMatrix(const Matrix& y, const RepetitionPattern& sHat)
    : y_(&y), pattern_(&sHat), offsets_(sHat.runOffsets()) {
  if (sHat.totalColumns() != y.cols()) {
    throw ConfigError("pattern total " + std::to_string(sHat.totalColumns()) +
                      " differs from Y column count " +
                      std::to_string(y.cols()));
  }
}

std::vector<std::vector<Symbol>> SegmentedMatrix::explicitBlocks(
    std::size_t row, Symbol erasure) const {
  std::vector<std::vector<Symbol>> out(blocks());
  for (std::size_t j = 0; j < blocks(); ++j) {
    if (isErasure(j)) {
      out[j] = {erasure};
    } else {
      auto b = block(row, j);
      out[j].assign(b.begin(), b.end());
    }
  }
  return out;
}

SegmentedMatrix addMarkers(const Matrix& y, const RepetitionPattern& sHat) {
  return SegmentedMatrix(y, sHat);
}

double typicalityScore(std::span<const Symbol> xRow, const SegmentedMatrix& y,
                       std::size_t yRow, const EstimatedModel& model) {
  if (xRow.size() != y.blocks()) {
    throw ConfigError("X row length differs from the pattern length");
  }
  double acc = 0.0;
  for (std::size_t c = 0; c < y.blocks(); ++c) {
    acc += conditionalLogProb(model, xRow[c], y.block(yRow, c),
                              y.pattern()[c]);
  }
  return -acc / static_cast<double>(y.blocks());
}

kernels::ScoreTables buildScoreTables(const SegmentedMatrix& y,
                                      const EstimatedModel& model) {
  kernels::ScoreTables t;
  t.yRows = y.rows();
  t.cols = y.blocks();
  t.alphabet = model.alphabetSize();
  t.logProb.resize(t.yRows * t.cols * t.alphabet);
  const auto rows = static_cast<std::ptrdiff_t>(t.yRows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    double* out = t.logProb.data() + j * t.cols * t.alphabet;
    for (std::size_t c = 0; c < t.cols; ++c) {
      const auto blk = y.block(j, c);
      for (unsigned x = 0; x < t.alphabet; ++x) {
        out[c * t.alphabet + x] = conditionalLogProb(
            model, static_cast<Symbol>(x), blk, y.pattern()[c]);
      }
    }
  }
  return t;
}

double defaultTypicalityEpsilon(std::size_t n) {
  if (n == 0) throw ConfigError("epsilon needs n >= 1");
  return 4.0 / std::sqrt(static_cast<double>(n));
}

Permutation deanonymizeTypicality(const Matrix& x, const SegmentedMatrix& y,
                                  const EstimatedModel& model,
                                  double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  checkShapes(x, y, model);
  const auto tables = buildScoreTables(y, model);
  const auto claims = kernels::typicalCandidates(
      x, tables, model.jointEntropy(), epsilon);
  return resolveClaims(x.rows(), claims);
}

Permutation deanonymizeMinDelta(const Matrix& x, const SegmentedMatrix& y,
                                const EstimatedModel& model) {
  checkShapes(x, y, model);
  if (x.rows() == 0) return Permutation{};
  const auto tables = buildScoreTables(y, model);
  const auto best = kernels::argminDelta(x, tables, model.jointEntropy());
  std::vector<std::vector<std::uint32_t>> claims(best.size());
  for (std::size_t j = 0; j < best.size(); ++j) {
    if (std::isfinite(best[j].delta)) claims[j] = {best[j].index};
  }
  return resolveClaims(x.rows(), claims);
}

double scoreMatch(const Permutation& sigmaHat, const Permutation& sigma) {
  if (sigmaHat.size() != sigma.size()) {
    throw ConfigError("permutations differ in length");
  }
  if (sigma.size() == 0) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigmaHat[i] == Permutation::kUnmatched || sigmaHat[i] != sigma[i]) {
      ++wrong;
    }
  }
  return static_cast<double>(wrong) / static_cast<double>(sigma.size());
}

namespace reference {

Permutation deanonymizeTypicality(const Matrix& x, const SegmentedMatrix& y,
                                  const EstimatedModel& model,
                                  double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  checkShapes(x, y, model);
  const double center = model.jointEntropy();
  std::vector<std::vector<std::uint32_t>> claims(y.rows());
  for (std::size_t j = 0; j < y.rows(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (deltaOf(center, typicalityScore(x.row(i), y, j, model)) <= epsilon) {
        claims[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  return resolveClaims(x.rows(), claims);
}

Permutation deanonymizeMinDelta(const Matrix& x, const SegmentedMatrix& y,
                                const EstimatedModel& model) {
  checkShapes(x, y, model);
  const double center = model.jointEntropy();
  std::vector<std::vector<std::uint32_t>> claims(y.rows());
  for (std::size_t j = 0; j < y.rows(); ++j) {
    double best = kInf;
    std::uint32_t arg = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double d = deltaOf(center, typicalityScore(x.row(i), y, j, model));
      if (d < best) {
        best = d;
        arg = static_cast<std::uint32_t>(i);
      }
    }
    if (std::isfinite(best)) claims[j] = {arg};
  }
  return resolveClaims(x.rows(), claims);
}

}  // namespace reference
}  // namespace dbmatch
