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

#include "dbmatch/replica.hpp"

#include <algorithm>
#include <cmath>

#include "dbmatch/errors.hpp"
#include "dbmatch/kernels.hpp"

namespace dbmatch {

MixtureParameters trueMixtureParameters(const CategoricalDistribution& pX,
                                        const ObfuscationChannel& channel) {
  const std::size_t k = pX.size();
  std::vector<double> pY(k, 0.0);
  double sameReplica = 0.0;
  for (std::size_t x = 0; x < k; ++x) {
    double sq = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      pY[y] += pX[x] * channel(x, y);
      sq += channel(x, y) * channel(x, y);
    }
    sameReplica += pX[x] * sq;
  }
  double sameIndependent = 0.0;
  for (double v : pY) sameIndependent += v * v;
  return {1.0 - sameIndependent, 1.0 - sameReplica};
}

RunningDistances runningHammingDistances(const Matrix& y) {
  if (y.cols() < 2) {
    throw ConfigError("running Hamming distances need at least two columns");
  }
  return {kernels::runningHamming(y), y.rows()};
}

MixtureEstimate estimateMixture(const RunningDistances& w) {
  if (w.w.size() < 3) {
    throw DegenerateMixture("mixture estimate needs at least 3 distances");
  }
  const double m = static_cast<double>(w.rows);
  if (w.rows < 3) throw DegenerateMixture("mixture estimate needs m >= 3");

  MixtureEstimate est;
  for (auto wj : w.w) {
    const double v = wj;
    const double a = v / m;
    const double b = a * (v - 1.0) / (m - 1.0);
    const double c = b * (v - 2.0) / (m - 2.0);
    est.f1 += a;
    est.f2 += b;
    est.f3 += c;
  }
  const double count = static_cast<double>(w.w.size());
  est.f1 /= count;
  est.f2 /= count;
  est.f3 /= count;

  const double spread = est.f2 - est.f1 * est.f1;
  if (spread <= kMixtureVarianceTolerance) {
    throw DegenerateMixture("factorial moments show no mixture spread");
  }
  est.u = (est.f3 - est.f1 * est.f2) / spread;
  const double disc = est.u * est.u - 4.0 * est.u * est.f1 + 4.0 * est.f2;
  if (disc < 0.0) {
    throw DegenerateMixture("negative discriminant in mixture estimate");
  }
  const double root = std::sqrt(disc);
  double hi = (est.u + root) / 2.0;
  double lo = (est.u - root) / 2.0;
  if (hi < lo) std::swap(hi, lo);
  est.p0 = std::clamp(hi, 0.0, 1.0);
  est.p1 = std::clamp(lo, 0.0, 1.0);
  est.tau = (est.p0 + est.p1) / 2.0;
  return est;
}

ReplicaDetection detectReplicas(const Matrix& y) {
  if (y.cols() < 4) {
    throw ConfigError("replica detection needs at least four columns");
  }
  const auto w = runningHammingDistances(y);
  ReplicaDetection out;
  out.estimate = estimateMixture(w);
  const double cut = static_cast<double>(w.rows) * out.estimate.tau;
  out.isReplica.resize(w.w.size());
  for (std::size_t j = 0; j < w.w.size(); ++j) {
    out.isReplica[j] = static_cast<double>(w.w[j]) <= cut;
  }
  return out;
}

bool singleComponent(const RunningDistances& w, double z) {
  if (w.w.empty() || w.rows == 0) return false;
  const double m = static_cast<double>(w.rows);
  double mean = 0.0;
  for (auto v : w.w) mean += v;
  mean /= static_cast<double>(w.w.size());
  const double sd = std::sqrt(mean * (1.0 - mean / m));
  return std::all_of(w.w.begin(), w.w.end(), [&](std::uint32_t v) {
    return std::abs(static_cast<double>(v) - mean) <= z * sd;
  });
}

ReplicaDetection detectReplicasOrNone(const Matrix& y, double z) {
  if (y.cols() < 4) {
    throw ConfigError("replica detection needs at least four columns");
  }
  const auto w = runningHammingDistances(y);
  if (singleComponent(w, z)) {
    ReplicaDetection out;
    out.isReplica.assign(w.w.size(), false);
    return out;
  }
  return detectReplicas(y);
}

double mixingWeightDiagnostic(const RepetitionPattern& s) {
  const std::size_t k = s.totalColumns();
  if (k < 2) throw ConfigError("mixing weight needs K_n >= 2");
  const double deleted = static_cast<double>(s.size() - s.retainedCount());
  return (static_cast<double>(s.size()) - deleted) /
         static_cast<double>(k - 1);
}

}  // namespace dbmatch
