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

#include "dbmatch/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_map>

#include "dbmatch/errors.hpp"
#include "dbmatch/kernels.hpp"

namespace dbmatch {
namespace {

std::string_view keyOf(std::span<const std::uint32_t> h) {
  return {reinterpret_cast<const char*>(h.data()), h.size_bytes()};
}

std::string_view keyOf(std::span<const Symbol> row) {
  return {reinterpret_cast<const char*>(row.data()), row.size_bytes()};
}

void checkPattern(const Matrix& x, const Matrix& y,
                  const RepetitionPattern& sHat) {
  if (sHat.size() != x.cols()) {
    throw ConfigError("pattern length differs from X column count");
  }
  if (sHat.totalColumns() != y.cols()) {
    throw ConfigError("pattern total differs from Y column count");
  }
  if (x.rows() != y.rows()) throw ConfigError("X and Y differ in row count");
}

// X-bar (retained columns) and Y-bar (first column of every run).
std::pair<Matrix, Matrix> reducedPair(const Matrix& x, const Matrix& y,
                                      const RepetitionPattern& sHat) {
  const auto retained = sHat.retainedIndices();
  const auto offsets = sHat.runOffsets();
  std::vector<std::size_t> firsts;
  firsts.reserve(retained.size());
  for (auto j : retained) firsts.push_back(offsets[j]);
  return {x.selectColumns(retained), y.selectColumns(firsts)};
}

}  // namespace

HistogramMatrix columnHistograms(const Matrix& d, unsigned alphabetSize) {
  for (Symbol v : d.data()) {
    if (v >= alphabetSize) {
      throw ConfigError("histogram input holds a symbol outside the alphabet");
    }
  }
  return {alphabetSize, d.cols(), kernels::columnHistograms(d, alphabetSize)};
}

std::vector<std::vector<std::size_t>> duplicateHistogramGroups(
    const HistogramMatrix& h) {
  std::vector<std::size_t> order(h.columns);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    auto ca = h.column(a);
    auto cb = h.column(b);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(),
                                        cb.end());
  });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t e = k + 1;
    while (e < order.size() &&
           std::ranges::equal(h.column(order[k]), h.column(order[e]))) {
      ++e;
    }
    if (e - k > 1) {
      std::vector<std::size_t> g(order.begin() + k, order.begin() + e);
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
    k = e;
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

bool hasDuplicateHistograms(const HistogramMatrix& h) {
  return !duplicateHistogramGroups(h).empty();
}

HistogramDetection detectRepetitionsHistogram(const Matrix& x,
                                              const Matrix& y,
                                              unsigned alphabetSize) {
  if (x.rows() != y.rows()) throw ConfigError("X and Y differ in row count");
  const auto hx = columnHistograms(x, alphabetSize);
  const auto hy = columnHistograms(y, alphabetSize);
  std::unordered_map<std::string_view, std::uint32_t> multiplicity;
  multiplicity.reserve(hy.columns);
  for (std::size_t c = 0; c < hy.columns; ++c) ++multiplicity[keyOf(hy.column(c))];

  HistogramDetection out;
  std::vector<std::uint32_t> s(hx.columns, 0);
  for (std::size_t j = 0; j < hx.columns; ++j) {
    auto it = multiplicity.find(keyOf(hx.column(j)));
    if (it != multiplicity.end()) s[j] = it->second;
  }
  out.pattern = RepetitionPattern(std::move(s));
  out.ambiguousGroups = duplicateHistogramGroups(hx);
  return out;
}

Permutation matchExact(const Matrix& x, const Matrix& y,
                       const RepetitionPattern& sHat) {
  checkPattern(x, y, sHat);
  const auto [xb, yb] = reducedPair(x, y, sHat);
  struct Seen {
    std::uint32_t count = 0;
    std::uint32_t row = 0;
  };
  std::unordered_map<std::string_view, Seen> xs;
  std::unordered_map<std::string_view, Seen> ys;
  xs.reserve(xb.rows());
  ys.reserve(yb.rows());
  for (std::size_t i = 0; i < xb.rows(); ++i) {
    auto& e = xs[keyOf(xb.row(i))];
    ++e.count;
    e.row = static_cast<std::uint32_t>(i);
  }
  for (std::size_t j = 0; j < yb.rows(); ++j) {
    auto& e = ys[keyOf(yb.row(j))];
    ++e.count;
    e.row = static_cast<std::uint32_t>(j);
  }
  auto sigma = Permutation::unmatched(x.rows());
  for (std::size_t i = 0; i < xb.rows(); ++i) {
    const auto key = keyOf(xb.row(i));
    if (xs[key].count != 1) continue;
    auto it = ys.find(key);
    if (it != ys.end() && it->second.count == 1) sigma[i] = it->second.row;
  }
  return sigma;
}

bool sampleHistogramCollision(const CategoricalDistribution& pX,
                              std::size_t rows, std::size_t columns,
                              Engine& eng) {
  const unsigned k = static_cast<unsigned>(pX.size());
  HistogramMatrix h{k, columns, std::vector<std::uint32_t>(columns * k, 0)};
  for (std::size_t c = 0; c < columns; ++c) {
    // Multinomial draw as a chain of conditional binomials.
    std::uint64_t remaining = rows;
    double mass = 1.0;
    for (unsigned s = 0; s + 1 < k && remaining > 0; ++s) {
      const double p = mass > 0.0 ? std::clamp(pX[s] / mass, 0.0, 1.0) : 1.0;
      std::binomial_distribution<std::uint64_t> draw(remaining, p);
      const auto got = draw(eng);
      h.counts[c * k + s] = static_cast<std::uint32_t>(got);
      remaining -= got;
      mass -= pX[s];
    }
    h.counts[c * k + k - 1] += static_cast<std::uint32_t>(remaining);
  }
  return hasDuplicateHistograms(h);
}

CollisionCount histogramCollisionRate(const ModelSpec& spec,
                                      std::size_t trials,
                                      std::uint64_t masterSeed,
                                      std::uint64_t point) {
  if (trials == 0) throw ConfigError("trials must be >= 1");
  CollisionCount out;
  out.trials = trials;
  const auto t = static_cast<std::ptrdiff_t>(trials);
  std::size_t errors = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : errors)
  for (std::ptrdiff_t tt = 0; tt < t; ++tt) {
    auto eng = makeStream(masterSeed, StreamId::kTrial, point,
                          static_cast<std::uint64_t>(tt));
    if (sampleHistogramCollision(spec.pX, spec.rows, spec.columns, eng)) {
      ++errors;
    }
  }
  out.errors = errors;
  return out;
}

namespace reference {

HistogramDetection detectRepetitionsHistogram(const Matrix& x,
                                              const Matrix& y,
                                              unsigned alphabetSize) {
  if (x.rows() != y.rows()) throw ConfigError("X and Y differ in row count");
  const auto hx = columnHistograms(x, alphabetSize);
  const auto hy = columnHistograms(y, alphabetSize);
  std::vector<std::uint32_t> s(hx.columns, 0);
  for (std::size_t j = 0; j < hx.columns; ++j) {
    for (std::size_t c = 0; c < hy.columns; ++c) {
      if (std::ranges::equal(hx.column(j), hy.column(c))) ++s[j];
    }
  }
  HistogramDetection out;
  out.pattern = RepetitionPattern(std::move(s));
  std::vector<bool> grouped(hx.columns, false);
  for (std::size_t a = 0; a < hx.columns; ++a) {
    if (grouped[a]) continue;
    std::vector<std::size_t> g{a};
    for (std::size_t b = a + 1; b < hx.columns; ++b) {
      if (std::ranges::equal(hx.column(a), hx.column(b))) {
        g.push_back(b);
        grouped[b] = true;
      }
    }
    if (g.size() > 1) out.ambiguousGroups.push_back(std::move(g));
  }
  return out;
}

Permutation matchExact(const Matrix& x, const Matrix& y,
                       const RepetitionPattern& sHat) {
  checkPattern(x, y, sHat);
  const auto [xb, yb] = reducedPair(x, y, sHat);
  auto sigma = Permutation::unmatched(x.rows());
  for (std::size_t i = 0; i < xb.rows(); ++i) {
    std::size_t twins = 0;
    for (std::size_t k = 0; k < xb.rows(); ++k) {
      if (std::ranges::equal(xb.row(i), xb.row(k))) ++twins;
    }
    std::size_t hits = 0;
    std::uint32_t last = 0;
    for (std::size_t j = 0; j < yb.rows(); ++j) {
      if (std::ranges::equal(xb.row(i), yb.row(j))) {
        ++hits;
        last = static_cast<std::uint32_t>(j);
      }
    }
    if (twins == 1 && hits == 1) sigma[i] = last;
  }
  return sigma;
}

}  // namespace reference
}  // namespace dbmatch
