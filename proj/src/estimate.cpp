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

#include "dbmatch/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dbmatch/errors.hpp"
#include "dbmatch/infotheory.hpp"

namespace dbmatch {

double EstimatedModel::jointEntropy() const {
  const double hx = entropy(pX);
  const double hyx = conditionalEntropy(pX, channel);
  double h = 0.0;
  for (std::size_t s = 0; s < pS.size(); ++s) {
    h += pS[s] * (hx + static_cast<double>(s) * hyx);
  }
  return h;
}

double EstimatedModel::mutualInformation() const {
  return matchingCapacity(pX, channel, pS);
}

nlohmann::json toJson(const EstimatedModel& model) {
  nlohmann::json j;
  j["alphabet"] = model.alphabetSize();
  j["p_x"] = std::vector<double>(model.pX.values().begin(),
                                 model.pX.values().end());
  j["channel"] = model.channel.rows();
  j["p_s"] = std::vector<double>(model.pS.values().begin(),
                                 model.pS.values().end());
  std::vector<unsigned> unseen(model.unobservedSymbols.begin(),
                               model.unobservedSymbols.end());
  j["unobserved_symbols"] = unseen;
  return j;
}

EstimatedModel estimatedModelFromJson(const nlohmann::json& j) {
  try {
    EstimatedModel m;
    m.pX = CategoricalDistribution(j.at("p_x").get<std::vector<double>>());
    m.channel = ObfuscationChannel(
        j.at("channel").get<std::vector<std::vector<double>>>());
    m.pS = CategoricalDistribution(j.at("p_s").get<std::vector<double>>());
    if (j.contains("unobserved_symbols")) {
      for (auto v : j.at("unobserved_symbols").get<std::vector<unsigned>>()) {
        m.unobservedSymbols.push_back(static_cast<Symbol>(v));
      }
    }
    if (m.channel.size() != m.pX.size()) {
      throw ConfigError("estimated model: channel and p_x sizes differ");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("estimated model JSON: ") + e.what());
  }
}

RepetitionPattern estimateRepetitionPattern(
    const std::vector<bool>& isReplica, std::span<const std::size_t> retained,
    std::size_t n) {
  for (std::size_t k = 0; k < retained.size(); ++k) {
    if (retained[k] >= n) {
      throw ConfigError("retained index outside [n]");
    }
    if (k > 0 && retained[k] <= retained[k - 1]) {
      throw ConfigError("retained indices must be strictly increasing");
    }
  }
  std::vector<std::uint32_t> runs{1};
  for (bool rep : isReplica) {
    if (rep) {
      ++runs.back();
    } else {
      runs.push_back(1);
    }
  }
  if (runs.size() != retained.size()) {
    throw InconsistentDetection(
        "replica flags give " + std::to_string(runs.size()) +
        " runs but " + std::to_string(retained.size()) +
        " columns were detected as retained");
  }
  std::vector<std::uint32_t> s(n, 0);
  for (std::size_t k = 0; k < retained.size(); ++k) s[retained[k]] = runs[k];
  return RepetitionPattern(std::move(s));
}

EstimatedModel estimateDistributions(const Matrix& g1, const Matrix& g2,
                                     const RepetitionPattern& sHat,
                                     unsigned alphabetSize,
                                     std::size_t sMax,
                                     double channelPseudoCount) {
  if (!(channelPseudoCount >= 0.0)) {
    throw ConfigError("pseudo-count must be non-negative");
  }
  if (g1.rows() != g2.rows()) {
    throw ConfigError("seed matrices differ in row count");
  }
  if (sHat.size() != g1.cols()) {
    throw ConfigError("pattern length differs from G1 column count");
  }
  if (sHat.totalColumns() != g2.cols()) {
    throw ConfigError("pattern total differs from G2 column count");
  }
  const unsigned k = alphabetSize;

  std::vector<double> xCount(k, 0.0);
  for (Symbol v : g1.data()) {
    if (v >= k) throw ConfigError("G1 symbol outside the alphabet");
    xCount[v] += 1.0;
  }
  const double cells = static_cast<double>(g1.data().size());
  for (auto& c : xCount) c /= cells;

  std::vector<double> joint(static_cast<std::size_t>(k) * k, 0.0);
  const auto offsets = sHat.runOffsets();
  for (std::size_t t = 0; t < g1.rows(); ++t) {
    auto xr = g1.row(t);
    auto yr = g2.row(t);
    for (std::size_t j = 0; j < sHat.size(); ++j) {
      for (std::size_t c = offsets[j]; c < offsets[j + 1]; ++c) {
        if (yr[c] >= k) throw ConfigError("G2 symbol outside the alphabet");
        joint[xr[j] * k + yr[c]] += 1.0;
      }
    }
  }

  EstimatedModel model;
  for (unsigned x = 0; x < k; ++x) {
    double rowTotal = 0.0;
    for (unsigned y = 0; y < k; ++y) rowTotal += joint[x * k + y];
    if (rowTotal == 0.0) model.unobservedSymbols.push_back(static_cast<Symbol>(x));
    const double denom = rowTotal + channelPseudoCount * k;
    for (unsigned y = 0; y < k; ++y) {
      joint[x * k + y] =
          denom > 0.0 ? (joint[x * k + y] + channelPseudoCount) / denom
                      : 1.0 / static_cast<double>(k);
    }
  }

  const std::size_t sSize =
      std::max<std::size_t>(sMax, sHat.maxCount()) + 1;
  std::vector<double> sCount(sSize, 0.0);
  for (auto v : sHat.counts()) sCount[v] += 1.0;
  for (auto& c : sCount) c /= static_cast<double>(sHat.size());

  model.pX = CategoricalDistribution(std::move(xCount));
  model.channel = ObfuscationChannel(k, std::move(joint));
  model.pS = CategoricalDistribution(std::move(sCount));
  return model;
}

double conditionalLogProb(const EstimatedModel& model, Symbol x,
                          std::span<const Symbol> block, std::size_t s) {
  if (x >= model.alphabetSize()) {
    return -std::numeric_limits<double>::infinity();
  }
  double lp = std::log2(model.pX[x]);
  if (s == 0) return lp;
  if (block.size() != s) {
    throw ConfigError("block length differs from its repetition count");
  }
  for (Symbol y : block) {
    if (y >= model.alphabetSize()) {
      return -std::numeric_limits<double>::infinity();
    }
    lp += std::log2(model.channel(x, y));
  }
  return lp;
}

}  // namespace dbmatch
