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

// Data-parallel inner loops.
//
// Every kernel in dbmatch::kernels is OpenMP-parallel and has a plain serial
// twin in dbmatch::kernels::reference with the same signature. The twins are
// kept for testing and benchmarking; both return bit-identical results.
//
// Called from inside an active parallel region (e.g. one Monte Carlo trial
// per thread) the kernels run on the calling thread only.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dbmatch/model.hpp"

namespace dbmatch::kernels {

/// W_j = #rows with y(t, j) != y(t, j+1), j = 0..cols-2.
std::vector<std::uint32_t> runningHamming(const Matrix& y);

/// L(i, j) = #rows t with g1(t, i) != remap[g2(t, j)]; returned row-major
/// as g1.cols() x g2.cols().
std::vector<std::uint32_t> crossHamming(const Matrix& g1, const Matrix& g2,
                                        std::span<const Symbol> remap);

/// Column histograms, column-major: entry [c * alphabet + s] counts symbol s
/// in column c. Erasures are not counted.
std::vector<std::uint32_t> columnHistograms(const Matrix& d,
                                            unsigned alphabet);

/// Per-Y-row log-probability tables for the typicality scores.
///
/// tables holds yRows blocks of cols * alphabet entries; entry
/// [(j * cols + c) * alphabet + x] is log2 p(x, block_{j,c}). The score of
/// the pair (i, j) is -(1/cols) * sum_c table_j[c][x(i, c)].
struct ScoreTables {
  std::size_t yRows = 0;
  std::size_t cols = 0;
  unsigned alphabet = 0;
  std::vector<double> logProb;

  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(logProb).subspan(j * cols * alphabet,
                                                    cols * alphabet);
  }
};

/// Full score matrix, row-major yRows x x.rows(): entry [j * m + i].
std::vector<double> scoreMatrix(const Matrix& x, const ScoreTables& tables);

struct RowArgmin {
  std::uint32_t index = 0;  // lowest X row attaining the minimum
  double delta = 0.0;       // |center - score|, +inf when nothing is finite
};

/// For each Y row, the X row minimising |center - score|.
std::vector<RowArgmin> argminDelta(const Matrix& x, const ScoreTables& tables,
                                   double center);

/// For each Y row, ascending X rows with |center - score| <= epsilon.
std::vector<std::vector<std::uint32_t>> typicalCandidates(
    const Matrix& x, const ScoreTables& tables, double center,
    double epsilon);

namespace reference {

std::vector<std::uint32_t> runningHamming(const Matrix& y);
std::vector<std::uint32_t> crossHamming(const Matrix& g1, const Matrix& g2,
                                        std::span<const Symbol> remap);
std::vector<std::uint32_t> columnHistograms(const Matrix& d,
                                            unsigned alphabet);
std::vector<double> scoreMatrix(const Matrix& x, const ScoreTables& tables);
std::vector<RowArgmin> argminDelta(const Matrix& x, const ScoreTables& tables,
                                   double center);
std::vector<std::vector<std::uint32_t>> typicalCandidates(
    const Matrix& x, const ScoreTables& tables, double center,
    double epsilon);

}  // namespace reference
}  // namespace dbmatch::kernels
