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

#include "dbmatch/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dbmatch/errors.hpp"

namespace dbmatch::kernels {
namespace {

constexpr std::size_t kYTile = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

void checkTables(const Matrix& x, const ScoreTables& t) {
  if (t.cols != x.cols()) {
    throw ConfigError("score tables: column count differs from X");
  }
  if (t.logProb.size() != t.yRows * t.cols * t.alphabet) {
    throw ConfigError("score tables: size mismatch");
  }
}

std::vector<Symbol> remapColumns(const Matrix& g2,
                                 std::span<const Symbol> remap) {
  auto cm = g2.transposed();
  for (auto& v : cm) v = v < remap.size() ? remap[v] : v;
  return cm;
}

// Scores of X row `xr` against Y rows [j0, j0 + count).
inline void tileScores(std::span<const Symbol> xr, const ScoreTables& t,
                       std::size_t j0, std::size_t count, double* out) {
  const std::size_t n = t.cols;
  const unsigned k = t.alphabet;
  for (std::size_t b = 0; b < count; ++b) {
    const double* tab = t.logProb.data() + (j0 + b) * n * k;
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += tab[c * k + xr[c]];
    out[b] = -acc / static_cast<double>(n);
  }
}

inline double deltaOf(double center, double score) {
  // Scores are +inf for impossible pairs; keep their delta at +inf.
  return std::isinf(score) ? kInf : std::abs(center - score);
}

}  // namespace

std::vector<std::uint32_t> runningHamming(const Matrix& y) {
  const std::size_t k = y.cols();
  if (k < 2) return {};
  std::vector<std::uint32_t> w(k - 1, 0);
  const auto blocks = static_cast<std::ptrdiff_t>((k - 1 + 63) / 64);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * 64;
    const std::size_t hi = std::min(lo + 64, k - 1);
    for (std::size_t t = 0; t < y.rows(); ++t) {
      auto r = y.row(t);
      for (std::size_t j = lo; j < hi; ++j) w[j] += r[j] != r[j + 1];
    }
  }
  return w;
}

std::vector<std::uint32_t> crossHamming(const Matrix& g1, const Matrix& g2,
                                        std::span<const Symbol> remap) {
  if (g1.rows() != g2.rows()) {
    throw ConfigError("cross Hamming: seed matrices differ in row count");
  }
  const std::size_t rows = g1.rows();
  const std::size_t n = g1.cols();
  const std::size_t kt = g2.cols();
  const auto a = g1.transposed();
  const auto b = remapColumns(g2, remap);
  std::vector<std::uint32_t> out(n * kt);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const Symbol* ai = a.data() + i * rows;
    for (std::size_t j = 0; j < kt; ++j) {
      const Symbol* bj = b.data() + j * rows;
      std::uint32_t d = 0;
      for (std::size_t t = 0; t < rows; ++t) d += ai[t] != bj[t];
      out[i * kt + j] = d;
    }
  }
  return out;
}

std::vector<std::uint32_t> columnHistograms(const Matrix& d,
                                            unsigned alphabet) {
  const std::size_t n = d.cols();
  std::vector<std::uint32_t> h(n * alphabet, 0);
  const auto cm = d.transposed();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t cc = 0; cc < static_cast<std::ptrdiff_t>(n); ++cc) {
    const auto c = static_cast<std::size_t>(cc);
    std::uint32_t* hc = h.data() + c * alphabet;
    const Symbol* col = cm.data() + c * d.rows();
    for (std::size_t t = 0; t < d.rows(); ++t) {
      if (col[t] < alphabet) ++hc[col[t]];
    }
  }
  return h;
}

std::vector<double> scoreMatrix(const Matrix& x, const ScoreTables& tables) {
  checkTables(x, tables);
  const std::size_t m = x.rows();
  std::vector<double> out(tables.yRows * m);
  const auto tiles =
      static_cast<std::ptrdiff_t>((tables.yRows + kYTile - 1) / kYTile);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t tt = 0; tt < tiles; ++tt) {
    const std::size_t j0 = static_cast<std::size_t>(tt) * kYTile;
    const std::size_t cnt = std::min(kYTile, tables.yRows - j0);
    std::array<double, kYTile> s{};
    for (std::size_t i = 0; i < m; ++i) {
      tileScores(x.row(i), tables, j0, cnt, s.data());
      for (std::size_t b = 0; b < cnt; ++b) out[(j0 + b) * m + i] = s[b];
    }
  }
  return out;
}

std::vector<RowArgmin> argminDelta(const Matrix& x, const ScoreTables& tables,
                                   double center) {
  checkTables(x, tables);
  const std::size_t m = x.rows();
  std::vector<RowArgmin> out(tables.yRows, RowArgmin{0, kInf});
  const auto tiles =
      static_cast<std::ptrdiff_t>((tables.yRows + kYTile - 1) / kYTile);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t tt = 0; tt < tiles; ++tt) {
    const std::size_t j0 = static_cast<std::size_t>(tt) * kYTile;
    const std::size_t cnt = std::min(kYTile, tables.yRows - j0);
    std::array<double, kYTile> s{};
    for (std::size_t i = 0; i < m; ++i) {
      tileScores(x.row(i), tables, j0, cnt, s.data());
      for (std::size_t b = 0; b < cnt; ++b) {
        const double d = deltaOf(center, s[b]);
        if (d < out[j0 + b].delta) {
          out[j0 + b] = RowArgmin{static_cast<std::uint32_t>(i), d};
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> typicalCandidates(
    const Matrix& x, const ScoreTables& tables, double center,
    double epsilon) {
  checkTables(x, tables);
  const std::size_t m = x.rows();
  std::vector<std::vector<std::uint32_t>> out(tables.yRows);
  const auto tiles =
      static_cast<std::ptrdiff_t>((tables.yRows + kYTile - 1) / kYTile);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t tt = 0; tt < tiles; ++tt) {
    const std::size_t j0 = static_cast<std::size_t>(tt) * kYTile;
    const std::size_t cnt = std::min(kYTile, tables.yRows - j0);
    std::array<double, kYTile> s{};
    for (std::size_t i = 0; i < m; ++i) {
      tileScores(x.row(i), tables, j0, cnt, s.data());
      for (std::size_t b = 0; b < cnt; ++b) {
        if (deltaOf(center, s[b]) <= epsilon) {
          out[j0 + b].push_back(static_cast<std::uint32_t>(i));
        }
      }
    }
  }
  return out;
}

namespace reference {

std::vector<std::uint32_t> runningHamming(const Matrix& y) {
  if (y.cols() < 2) return {};
  std::vector<std::uint32_t> w(y.cols() - 1, 0);
  for (std::size_t j = 0; j + 1 < y.cols(); ++j) {
    for (std::size_t t = 0; t < y.rows(); ++t) w[j] += y(t, j) != y(t, j + 1);
  }
  return w;
}

std::vector<std::uint32_t> crossHamming(const Matrix& g1, const Matrix& g2,
                                        std::span<const Symbol> remap) {
  if (g1.rows() != g2.rows()) {
    throw ConfigError("cross Hamming: seed matrices differ in row count");
  }
  std::vector<std::uint32_t> out(g1.cols() * g2.cols(), 0);
  for (std::size_t i = 0; i < g1.cols(); ++i) {
    for (std::size_t j = 0; j < g2.cols(); ++j) {
      std::uint32_t d = 0;
      for (std::size_t t = 0; t < g1.rows(); ++t) {
        const Symbol v = g2(t, j);
        d += g1(t, i) != (v < remap.size() ? remap[v] : v);
      }
      out[i * g2.cols() + j] = d;
    }
  }
  return out;
}

std::vector<std::uint32_t> columnHistograms(const Matrix& d,
                                            unsigned alphabet) {
  std::vector<std::uint32_t> h(d.cols() * alphabet, 0);
  for (std::size_t t = 0; t < d.rows(); ++t) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (d(t, c) < alphabet) ++h[c * alphabet + d(t, c)];
    }
  }
  return h;
}

std::vector<double> scoreMatrix(const Matrix& x, const ScoreTables& tables) {
  checkTables(x, tables);
  const std::size_t m = x.rows();
  const std::size_t n = tables.cols;
  const unsigned k = tables.alphabet;
  std::vector<double> out(tables.yRows * m);
  for (std::size_t j = 0; j < tables.yRows; ++j) {
    auto tab = tables.row(j);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += tab[c * k + x(i, c)];
      out[j * m + i] = -acc / static_cast<double>(n);
    }
  }
  return out;
}

std::vector<RowArgmin> argminDelta(const Matrix& x, const ScoreTables& tables,
                                   double center) {
  const auto scores = reference::scoreMatrix(x, tables);
  const std::size_t m = x.rows();
  std::vector<RowArgmin> out(tables.yRows, RowArgmin{0, kInf});
  for (std::size_t j = 0; j < tables.yRows; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const double d = deltaOf(center, scores[j * m + i]);
      if (d < out[j].delta) out[j] = RowArgmin{static_cast<std::uint32_t>(i), d};
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> typicalCandidates(
    const Matrix& x, const ScoreTables& tables, double center,
    double epsilon) {
  const auto scores = reference::scoreMatrix(x, tables);
  const std::size_t m = x.rows();
  std::vector<std::vector<std::uint32_t>> out(tables.yRows);
  for (std::size_t j = 0; j < tables.yRows; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (deltaOf(center, scores[j * m + i]) <= epsilon) {
        out[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  return out;
}

}  // namespace reference
}  // namespace dbmatch::kernels
