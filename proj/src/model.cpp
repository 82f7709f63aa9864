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

#include "dbmatch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dbmatch/errors.hpp"

namespace dbmatch {

CategoricalDistribution CategoricalDistribution::uniform(std::size_t size) {
  return CategoricalDistribution(
      std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

CategoricalDistribution CategoricalDistribution::pointMass(std::size_t size,
                                                           std::size_t at) {
  std::vector<double> p(size, 0.0);
  p.at(at) = 1.0;
  return CategoricalDistribution(std::move(p));
}

double CategoricalDistribution::sum() const {
  return std::accumulate(p_.begin(), p_.end(), 0.0);
}

std::string CategoricalDistribution::validate() const {
  if (p_.empty()) return "empty";
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) return "negative or non-finite entry";
  }
  if (std::abs(sum() - 1.0) > kNormalizationTolerance) return "not normalized";
  return {};
}

std::size_t CategoricalDistribution::supportMax() const {
  for (std::size_t i = p_.size(); i-- > 0;) {
    if (p_[i] != 0.0) return i;
  }
  return 0;
}

ObfuscationChannel::ObfuscationChannel(std::size_t size,
                                       std::vector<double> rowMajor)
    : size_(size), p_(std::move(rowMajor)) {
  if (p_.size() != size_ * size_) {
    throw ConfigError("channel: expected " + std::to_string(size_ * size_) +
                      " entries, got " + std::to_string(p_.size()));
  }
}

ObfuscationChannel::ObfuscationChannel(
    const std::vector<std::vector<double>>& rows)
    : size_(rows.size()) {
  p_.reserve(size_ * size_);
  for (const auto& r : rows) {
    if (r.size() != size_) throw ConfigError("channel: matrix is not square");
    p_.insert(p_.end(), r.begin(), r.end());
  }
}

ObfuscationChannel ObfuscationChannel::identity(std::size_t size) {
  std::vector<double> p(size * size, 0.0);
  for (std::size_t x = 0; x < size; ++x) p[x * size + x] = 1.0;
  return ObfuscationChannel(size, std::move(p));
}

ObfuscationChannel ObfuscationChannel::symmetric(std::size_t size,
                                                 double crossover) {
  if (size < 2) throw ConfigError("symmetric channel needs |X| >= 2");
  const double off = crossover / static_cast<double>(size - 1);
  std::vector<double> p(size * size, off);
  for (std::size_t x = 0; x < size; ++x) p[x * size + x] = 1.0 - crossover;
  return ObfuscationChannel(size, std::move(p));
}

std::vector<std::vector<double>> ObfuscationChannel::rows() const {
  std::vector<std::vector<double>> out;
  for (std::size_t x = 0; x < size_; ++x) {
    auto r = row(x);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<std::string> ObfuscationChannel::validate() const {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < size_; ++x) {
    auto r = row(x);
    std::string why =
        CategoricalDistribution(std::vector<double>(r.begin(), r.end()))
            .validate();
    if (!why.empty()) {
      out.push_back("channel row " + std::to_string(x) + " " + why);
    }
  }
  return out;
}

double ModelSpec::growthRate() const {
  return std::log2(static_cast<double>(rows)) / static_cast<double>(columns);
}

ModelSpec deletionDuplicationSpec(std::size_t rows, std::size_t columns,
                                  unsigned alphabet, double crossover,
                                  double delta, double gamma) {
  ModelSpec spec;
  spec.rows = rows;
  spec.columns = columns;
  spec.alphabet = Alphabet(alphabet);
  spec.pX = CategoricalDistribution::uniform(alphabet);
  spec.channel = ObfuscationChannel::symmetric(alphabet, crossover);
  spec.pS = CategoricalDistribution({delta, 1.0 - delta - gamma, gamma});
  spec.sMax = 2;
  return spec;
}

std::vector<std::string> validateModel(const ModelSpec& spec) {
  std::vector<std::string> out;
  if (spec.rows < 1) out.emplace_back("m: must be at least 1");
  if (spec.columns < 1) out.emplace_back("n: must be at least 1");
  const unsigned k = spec.alphabet.size();
  if (k < 2) out.emplace_back("alphabet: size must be at least 2");
  if (k > Alphabet::kMaxSize - 1) {
    out.emplace_back("alphabet: size must leave room for the erasure symbol");
  }
  if (spec.pX.size() != k) {
    out.emplace_back("p_x: length differs from alphabet size");
  }
  if (auto why = spec.pX.validate(); !why.empty()) {
    out.push_back("p_x " + why);
  }
  if (spec.channel.size() != k) {
    out.emplace_back("channel: dimension differs from alphabet size");
  }
  for (auto& why : spec.channel.validate()) out.push_back(std::move(why));
  if (auto why = spec.pS.validate(); !why.empty()) {
    out.push_back("p_s " + why);
  }
  if (spec.pS.size() > 0 && spec.pS.supportMax() > spec.sMax) {
    out.emplace_back("p_s: support exceeds s_max");
  }
  return out;
}

void requireValidModel(const ModelSpec& spec) {
  auto violations = validateModel(spec);
  if (violations.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw ConfigError(msg);
}

nlohmann::json toJson(const ModelSpec& spec) {
  nlohmann::json j;
  j["m"] = spec.rows;
  j["n"] = spec.columns;
  j["alphabet"] = spec.alphabet.size();
  j["p_x"] = std::vector<double>(spec.pX.values().begin(),
                                 spec.pX.values().end());
  j["channel"] = spec.channel.rows();
  j["p_s"] = std::vector<double>(spec.pS.values().begin(),
                                 spec.pS.values().end());
  j["s_max"] = spec.sMax;
  return j;
}

ModelSpec modelSpecFromJson(const nlohmann::json& j) {
  try {
    ModelSpec spec;
    spec.rows = j.at("m").get<std::size_t>();
    spec.columns = j.at("n").get<std::size_t>();
    spec.alphabet = Alphabet(j.at("alphabet").get<unsigned>());
    spec.pX = CategoricalDistribution(j.at("p_x").get<std::vector<double>>());
    spec.channel = ObfuscationChannel(
        j.at("channel").get<std::vector<std::vector<double>>>());
    spec.pS = CategoricalDistribution(j.at("p_s").get<std::vector<double>>());
    spec.sMax = j.contains("s_max")
                    ? j.at("s_max").get<std::size_t>()
                    : (spec.pS.size() == 0 ? 0 : spec.pS.size() - 1);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model JSON: ") + e.what());
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Symbol> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ConfigError("matrix: data size does not match dimensions");
  }
}

std::vector<Symbol> Matrix::column(std::size_t c) const {
  std::vector<Symbol> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::selectColumns(std::span<const std::size_t> columns) const {
  Matrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      out(r, k) = (*this)(r, columns[k]);
    }
  }
  return out;
}

std::vector<Symbol> Matrix::transposed() const {
  std::vector<Symbol> out(data_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out[c * rows_ + r] = data_[r * cols_ + c];
    }
  }
  return out;
}

std::size_t RepetitionPattern::totalColumns() const {
  return std::accumulate(s_.begin(), s_.end(), std::size_t{0});
}

std::size_t RepetitionPattern::retainedCount() const {
  return static_cast<std::size_t>(
      std::count_if(s_.begin(), s_.end(), [](auto v) { return v != 0; }));
}

std::vector<std::size_t> RepetitionPattern::retainedIndices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s_.size(); ++j) {
    if (s_[j] != 0) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> RepetitionPattern::runOffsets() const {
  std::vector<std::size_t> out(s_.size() + 1, 0);
  for (std::size_t j = 0; j < s_.size(); ++j) out[j + 1] = out[j] + s_[j];
  return out;
}

std::uint32_t RepetitionPattern::maxCount() const {
  return s_.empty() ? 0 : *std::max_element(s_.begin(), s_.end());
}

std::vector<bool> replicaFlags(const RepetitionPattern& s) {
  const std::size_t k = s.totalColumns();
  std::vector<bool> flags(k > 0 ? k - 1 : 0, false);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::uint32_t r = 1; r < s[j]; ++r) flags[pos + r - 1] = true;
    pos += s[j];
  }
  return flags;
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<std::uint32_t> t(m);
  std::iota(t.begin(), t.end(), 0u);
  return Permutation(std::move(t));
}

Permutation Permutation::unmatched(std::size_t m) {
  return Permutation(std::vector<std::uint32_t>(m, kUnmatched));
}

bool Permutation::isBijection() const {
  std::vector<bool> seen(t_.size(), false);
  for (auto v : t_) {
    if (v >= t_.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::inverse() const {
  if (!isBijection()) throw ConfigError("inverse of a non-bijective map");
  std::vector<std::uint32_t> inv(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) {
    inv[t_[i]] = static_cast<std::uint32_t>(i);
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  std::vector<std::uint32_t> out(other.size());
  for (std::size_t i = 0; i < other.size(); ++i) {
    const auto mid = other[i];
    out[i] = mid == kUnmatched ? kUnmatched : t_.at(mid);
  }
  return Permutation(std::move(out));
}

std::vector<std::uint64_t> Permutation::toOneBased() const {
  std::vector<std::uint64_t> out(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) {
    out[i] = t_[i] == kUnmatched ? 0 : std::uint64_t{t_[i]} + 1;
  }
  return out;
}

Permutation Permutation::fromOneBased(std::span<const std::uint64_t> values) {
  std::vector<std::uint32_t> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > values.size()) {
      throw ConfigError("permutation entry out of range: " +
                        std::to_string(values[i]));
    }
    t[i] = values[i] == 0 ? kUnmatched
                          : static_cast<std::uint32_t>(values[i] - 1);
  }
  return Permutation(std::move(t));
}

}  // namespace dbmatch
