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

#include "dbmatch/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dbmatch/errors.hpp"

namespace dbmatch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a log2(a / b) with the usual conventions.
double klTerm(double a, double b) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return kInf;
  return a * std::log2(a / b);
}

}  // namespace

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double binaryKL(double p, double q) {
  return klTerm(p, q) + klTerm(1.0 - p, 1.0 - q);
}

JointDistribution::JointDistribution(std::vector<std::string> axisNames,
                                     std::vector<std::size_t> shape,
                                     std::vector<double> p)
    : names_(std::move(axisNames)), shape_(std::move(shape)), p_(std::move(p)) {
  if (names_.size() != shape_.size()) {
    throw ConfigError("joint distribution: axis names and shape differ");
  }
  const std::size_t cells = std::accumulate(
      shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  if (cells != p_.size()) {
    throw ConfigError("joint distribution: table size does not match shape");
  }
}

JointDistribution JointDistribution::marginal(
    std::span<const std::size_t> keep) const {
  std::vector<std::size_t> outShape;
  std::vector<std::string> outNames;
  for (auto a : keep) {
    outShape.push_back(shape_.at(a));
    outNames.push_back(names_.at(a));
  }
  const std::size_t outCells = std::accumulate(
      outShape.begin(), outShape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> out(outCells, 0.0);

  std::vector<std::size_t> idx(shape_.size(), 0);
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    std::size_t o = 0;
    for (auto a : keep) o = o * shape_[a] + idx[a];
    out[o] += p_[flat];
    for (std::size_t a = shape_.size(); a-- > 0;) {
      if (++idx[a] < shape_[a]) break;
      idx[a] = 0;
    }
  }
  return JointDistribution(std::move(outNames), std::move(outShape),
                           std::move(out));
}

double JointDistribution::mutualInformation(
    std::span<const std::size_t> a, std::span<const std::size_t> b) const {
  std::vector<std::size_t> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  std::sort(both.begin(), both.end());
  return marginal(a).entropy() + marginal(b).entropy() -
         marginal(both).entropy();
}

JointDistribution replicatedJoint(const CategoricalDistribution& pX,
                                  const ObfuscationChannel& channel,
                                  std::size_t s, std::size_t cellBudget) {
  const std::size_t k = pX.size();
  if (channel.size() != k) {
    throw ConfigError("channel dimension differs from p_x");
  }
  std::size_t cells = k;
  for (std::size_t r = 0; r < s; ++r) {
    if (cells > cellBudget / k) {
      throw ConfigError("joint table for s = " + std::to_string(s) +
                        " exceeds the cell budget");
    }
    cells *= k;
  }
  if (cells > cellBudget) {
    throw ConfigError("joint table exceeds the cell budget");
  }

  std::vector<std::string> names{"X"};
  for (std::size_t r = 1; r <= s; ++r) names.push_back("Y" + std::to_string(r));
  std::vector<std::size_t> shape(s + 1, k);

  // Build p(x, y1..ys) one axis at a time: p <- p * p(y_r | x).
  std::vector<double> table(pX.values().begin(), pX.values().end());
  std::size_t block = 1;  // number of y-cells per x so far
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<double> next(table.size() * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t yPrefix = 0; yPrefix < block; ++yPrefix) {
        const double base = table[x * block + yPrefix];
        for (std::size_t y = 0; y < k; ++y) {
          next[(x * block + yPrefix) * k + y] = base * channel(x, y);
        }
      }
    }
    table = std::move(next);
    block *= k;
  }
  return JointDistribution(std::move(names), std::move(shape),
                           std::move(table));
}

double replicatedMutualInformation(const CategoricalDistribution& pX,
                                   const ObfuscationChannel& channel,
                                   std::size_t s, std::size_t cellBudget) {
  if (s == 0) return 0.0;
  const auto joint = replicatedJoint(pX, channel, s, cellBudget);
  const std::size_t xAxis[] = {0};
  std::vector<std::size_t> yAxes(s);
  std::iota(yAxes.begin(), yAxes.end(), std::size_t{1});
  // Clamp the tiny negative values left by cancellation.
  return std::max(0.0, joint.mutualInformation(xAxis, yAxes));
}

double matchingCapacity(const CategoricalDistribution& pX,
                        const ObfuscationChannel& channel,
                        const CategoricalDistribution& pS,
                        std::size_t cellBudget) {
  double c = 0.0;
  for (std::size_t s = 1; s < pS.size(); ++s) {
    if (pS[s] == 0.0) continue;
    c += pS[s] * replicatedMutualInformation(pX, channel, s, cellBudget);
  }
  return c;
}

double noObfuscationCapacity(const CategoricalDistribution& pX,
                             const CategoricalDistribution& pS) {
  return (1.0 - pS.at(0)) * entropy(pX);
}

double conditionalEntropy(const CategoricalDistribution& pX,
                          const ObfuscationChannel& channel) {
  double h = 0.0;
  for (std::size_t x = 0; x < pX.size(); ++x) {
    if (pX[x] > 0.0) h += pX[x] * entropy(channel.row(x));
  }
  return h;
}

double replicaErrorBound(std::size_t totalColumns, std::size_t rows,
                         double tau, double p0, double p1) {
  if (!(p1 < tau && tau < p0)) {
    throw ConfigError("replica error bound: threshold must lie in (p1, p0)");
  }
  if (totalColumns < 1) throw ConfigError("replica error bound: K_n < 1");
  const double m = static_cast<double>(rows);
  return static_cast<double>(totalColumns - 1) *
         (std::exp2(-m * binaryKL(tau, p0)) +
          std::exp2(-m * binaryKL(1.0 - tau, 1.0 - p1)));
}

HistogramLogLinear histogramLogLinear(unsigned alphabet) {
  const double k = alphabet;
  const double slope = (1.0 - k) / 2.0;
  return {slope, slope * std::log2(4.0 * std::numbers::pi) +
                     (k / 2.0) * std::log2(k)};
}

double histogramCollisionEstimate(std::size_t columns, double rows,
                                  unsigned alphabet) {
  const auto ll = histogramLogLinear(alphabet);
  const double n = static_cast<double>(columns);
  return std::exp2(ll.slope * std::log2(rows) + ll.intercept +
                   2.0 * std::log2(n));
}

}  // namespace dbmatch
