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

#include "dbmatch/deletion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dbmatch/errors.hpp"
#include "dbmatch/kernels.hpp"

namespace dbmatch {
namespace {

void checkSeedShapes(const Matrix& g1, const Matrix& g2) {
  if (g1.rows() != g2.rows()) {
    throw ConfigError("seed matrices differ in row count");
  }
  if (g2.cols() == 0) throw ConfigError("no retained columns in G2");
  if (g1.rows() == 0) throw ConfigError("empty seed matrices");
}

std::vector<std::size_t> uniqueSorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double sortedRatio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? num + 1.0 : 1.0;
}

}  // namespace

bool Remapping::isIdentity() const {
  for (std::size_t a = 0; a < map.size(); ++a) {
    if (map[a] != a) return false;
  }
  return true;
}

std::vector<Remapping> symmetryGroup(unsigned alphabetSize) {
  if (alphabetSize < 1 || alphabetSize > kMaxRemapAlphabet) {
    throw ConfigError("symmetry group enumeration supports 1.." +
                      std::to_string(kMaxRemapAlphabet) + " symbols");
  }
  std::vector<Symbol> perm(alphabetSize);
  std::iota(perm.begin(), perm.end(), Symbol{0});
  std::vector<Remapping> out;
  do {
    out.push_back(Remapping{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Matrix applyRemapping(const Matrix& g, const Remapping& phi) {
  Matrix out = g;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (auto& v : out.row(r)) {
      if (v < phi.map.size()) v = phi.map[v];
    }
  }
  return out;
}

Matrix removeExtraReplicas(const Matrix& g2,
                           const std::vector<bool>& isReplica) {
  if (g2.cols() == 0) return g2;
  if (isReplica.size() + 1 != g2.cols()) {
    throw ConfigError("replica flags do not match the seed column count");
  }
  std::vector<std::size_t> keep{0};
  for (std::size_t j = 0; j < isReplica.size(); ++j) {
    if (!isReplica[j]) keep.push_back(j + 1);
  }
  return g2.selectColumns(keep);
}

SeedHammingParameters seedHammingParameters(const CategoricalDistribution& pX,
                                            const ObfuscationChannel& channel,
                                            const Remapping& phi) {
  const std::size_t k = pX.size();
  std::vector<double> pY(k, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) pY[y] += pX[x] * channel(x, y);
  }
  double agreeIndependent = 0.0;
  double agreeMatched = 0.0;
  for (std::size_t y = 0; y < k; ++y) {
    const std::size_t img = phi.map.at(y);
    agreeIndependent += pX[img] * pY[y];
    agreeMatched += pX[img] * channel(img, y);
  }
  return {1.0 - agreeIndependent, 1.0 - agreeMatched};
}

DeviationMatrix deviationMatrix(const Matrix& g1, const Matrix& g2,
                                const Remapping& phi) {
  checkSeedShapes(g1, g2);
  DeviationMatrix dev;
  dev.n = g1.cols();
  dev.kTilde = g2.cols();
  dev.l = kernels::crossHamming(g1, g2, phi.map);
  double total = 0.0;
  for (auto v : dev.l) total += v;
  dev.mu = total / static_cast<double>(dev.l.size());
  dev.m.resize(dev.l.size());
  for (std::size_t c = 0; c < dev.l.size(); ++c) {
    dev.m[c] = std::abs(static_cast<double>(dev.l[c]) - dev.mu);
  }
  return dev;
}

double asymptoticThreshold(std::size_t seedCount, std::size_t n) {
  return 2.0 * std::cbrt(static_cast<double>(seedCount) *
                         static_cast<double>(seedCount)) *
         std::cbrt(std::log2(static_cast<double>(n)));
}

DeletionDetection detectDeletionsAsymptotic(const Matrix& g1,
                                            const Matrix& g2,
                                            unsigned alphabetSize) {
  checkSeedShapes(g1, g2);
  if (g1.rows() < 2) throw ConfigError("asymptotic detector needs >= 2 seeds");
  const double cut = asymptoticThreshold(g1.rows(), g1.cols());
  const auto group = symmetryGroup(alphabetSize);

  for (std::size_t s = 0; s < group.size(); ++s) {
    const auto dev = deviationMatrix(g1, g2, group[s]);
    DeletionDetection out;
    out.columnToRow.resize(dev.kTilde);
    out.outlierScores.resize(dev.kTilde);
    bool useful = true;
    for (std::size_t j = 0; j < dev.kTilde && useful; ++j) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < dev.n; ++i) {
        if (dev.deviation(i, j) > cut) {
          if (count == 0) {
            out.columnToRow[j] = i;
            out.outlierScores[j] = dev.deviation(i, j);
          }
          ++count;
        }
      }
      if (count > 1) {
        throw MisdetectionError("column " + std::to_string(j) + " has " +
                                std::to_string(count) +
                                " rows above the threshold");
      }
      if (count == 0) useful = false;
    }
    if (!useful) continue;
    out.retained = uniqueSorted(out.columnToRow);
    out.remapIndex = s;
    out.remap = group[s];
    out.mu = dev.mu;
    out.threshold = cut;
    return out;
  }
  throw NoUsefulRemapping("no remapping produced an outlier in every column");
}

OrderStatisticRatios orderStatisticRatios(const DeviationMatrix& dev) {
  if (dev.n < 3) throw ConfigError("order statistic ratios need n >= 3");
  OrderStatisticRatios out;
  out.top.resize(dev.kTilde);
  out.second.resize(dev.kTilde);
  std::vector<double> col(dev.n);
  for (std::size_t j = 0; j < dev.kTilde; ++j) {
    for (std::size_t i = 0; i < dev.n; ++i) col[i] = dev.deviation(i, j);
    // Only the top three order statistics are needed.
    std::partial_sort(col.begin(), col.begin() + 3, col.end(),
                      std::greater<>());
    out.top[j] = sortedRatio(col[0], col[1]);
    out.second[j] = sortedRatio(col[1], col[2]);
  }
  return out;
}

DeletionDetection detectDeletionsModified(const Matrix& g1, const Matrix& g2,
                                          unsigned alphabetSize,
                                          double ratioThreshold) {
  checkSeedShapes(g1, g2);
  if (!(ratioThreshold > 1.0)) {
    throw ConfigError("ratio threshold must exceed 1");
  }
  const auto group = symmetryGroup(alphabetSize);

  for (std::size_t s = 0; s < group.size(); ++s) {
    const auto dev = deviationMatrix(g1, g2, group[s]);
    const auto ratios = orderStatisticRatios(dev);
    const double kt = static_cast<double>(dev.kTilde);
    const double meanTop =
        std::accumulate(ratios.top.begin(), ratios.top.end(), 0.0) / kt;
    const double meanSecond =
        std::accumulate(ratios.second.begin(), ratios.second.end(), 0.0) / kt;
    if (meanTop < ratioThreshold * meanSecond) continue;

    DeletionDetection out;
    out.columnToRow.resize(dev.kTilde);
    out.outlierScores.resize(dev.kTilde);
    for (std::size_t j = 0; j < dev.kTilde; ++j) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < dev.n; ++i) {
        if (dev.deviation(i, j) > dev.deviation(best, j)) best = i;
      }
      out.columnToRow[j] = best;
      out.outlierScores[j] = dev.deviation(best, j);
    }
    out.retained = uniqueSorted(out.columnToRow);
    out.remapIndex = s;
    out.remap = group[s];
    out.mu = dev.mu;
    out.threshold = ratioThreshold;
    out.ratioStatistic = meanTop / meanSecond;
    return out;
  }
  throw NoUsefulRemapping("no useful remapping found");
}

}  // namespace dbmatch
