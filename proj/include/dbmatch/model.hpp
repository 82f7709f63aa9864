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

// Core value types shared by every stage: alphabets, categorical laws, the
// obfuscation channel, the model description, symbol matrices, repetition
// patterns and row permutations.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace dbmatch {

using Symbol = std::uint8_t;

inline constexpr double kNormalizationTolerance = 1e-12;

/// Finite alphabet {0, ..., size-1}. The value `size` itself is reserved as
/// the erasure symbol.
class Alphabet {
 public:
  static constexpr unsigned kMaxSize = std::numeric_limits<Symbol>::max();

  Alphabet() = default;
  explicit Alphabet(unsigned size) : size_(size) {}

  unsigned size() const { return size_; }
  Symbol erasure() const { return static_cast<Symbol>(size_); }
  bool contains(Symbol s) const { return s < size_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  unsigned size_ = 0;
};

/// Probability vector over {0, ..., size-1}. Not validated on construction;
/// see validate().
class CategoricalDistribution {
 public:
  CategoricalDistribution() = default;
  explicit CategoricalDistribution(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {}

  static CategoricalDistribution uniform(std::size_t size);
  static CategoricalDistribution pointMass(std::size_t size, std::size_t at);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double at(std::size_t i) const { return i < p_.size() ? p_[i] : 0.0; }
  std::span<const double> values() const { return p_; }

  double sum() const;
  /// Empty string when the vector is a distribution, else the broken rule.
  std::string validate() const;
  /// Largest index with nonzero mass; 0 for an empty vector.
  std::size_t supportMax() const;

  friend bool operator==(const CategoricalDistribution&,
                         const CategoricalDistribution&) = default;

 private:
  std::vector<double> p_;
};

/// Square transition matrix p(y|x) over one alphabet; row x is p(.|x).
class ObfuscationChannel {
 public:
  ObfuscationChannel() = default;
  ObfuscationChannel(std::size_t size, std::vector<double> rowMajor);
  explicit ObfuscationChannel(const std::vector<std::vector<double>>& rows);

  static ObfuscationChannel identity(std::size_t size);
  /// |X|-ary symmetric channel: 1-eps on the diagonal, eps/(|X|-1) elsewhere.
  static ObfuscationChannel symmetric(std::size_t size, double crossover);

  std::size_t size() const { return size_; }
  double operator()(std::size_t x, std::size_t y) const {
    return p_[x * size_ + y];
  }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(p_).subspan(x * size_, size_);
  }
  std::vector<std::vector<double>> rows() const;
  std::vector<std::string> validate() const;

  friend bool operator==(const ObfuscationChannel&,
                         const ObfuscationChannel&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> p_;
};

/// Everything needed to generate a database pair. Hidden from detectors.
struct ModelSpec {
  std::size_t rows = 0;     // m_n
  std::size_t columns = 0;  // n
  Alphabet alphabet;
  CategoricalDistribution pX;
  ObfuscationChannel channel;
  CategoricalDistribution pS;
  std::size_t sMax = 0;

  /// (1/n) log2 m_n.
  double growthRate() const;
  double deletionProbability() const { return pS.at(0); }
};

/// Uniform p_X, |X|-ary symmetric channel and the deletion/duplication law
/// (delta, 1-delta-gamma, gamma).
ModelSpec deletionDuplicationSpec(std::size_t rows, std::size_t columns,
                                  unsigned alphabet, double crossover,
                                  double delta, double gamma);

/// Empty iff every invariant of the spec holds.
std::vector<std::string> validateModel(const ModelSpec& spec);
/// Throws ConfigError listing the violations.
void requireValidModel(const ModelSpec& spec);

nlohmann::json toJson(const ModelSpec& spec);
ModelSpec modelSpecFromJson(const nlohmann::json& j);

/// Row-major grid of symbols (alphabet symbols or erasure).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Symbol fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Symbol> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Symbol operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Symbol& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  std::span<const Symbol> row(std::size_t r) const {
    return std::span<const Symbol>(data_).subspan(r * cols_, cols_);
  }
  std::span<Symbol> row(std::size_t r) {
    return std::span<Symbol>(data_).subspan(r * cols_, cols_);
  }
  std::span<const Symbol> data() const { return data_; }

  std::vector<Symbol> column(std::size_t c) const;
  /// New matrix made of the listed columns, in the listed order.
  Matrix selectColumns(std::span<const std::size_t> columns) const;
  /// Column-major copy: entry (r, c) lands at c * rows() + r.
  std::vector<Symbol> transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// Per-column repetition counts S_1..S_n.
class RepetitionPattern {
 public:
  RepetitionPattern() = default;
  explicit RepetitionPattern(std::vector<std::uint32_t> counts)
      : s_(std::move(counts)) {}

  std::size_t size() const { return s_.size(); }
  std::uint32_t operator[](std::size_t j) const { return s_[j]; }
  std::span<const std::uint32_t> counts() const { return s_; }

  /// K_n = sum of S_j.
  std::size_t totalColumns() const;
  /// Number of columns with S_j != 0.
  std::size_t retainedCount() const;
  /// I_R: 0-based indices j with S_j != 0, ascending.
  std::vector<std::size_t> retainedIndices() const;
  /// Start of column j's run in Y (K_{j-1}); size()+1 entries.
  std::vector<std::size_t> runOffsets() const;
  std::uint32_t maxCount() const;

  friend bool operator==(const RepetitionPattern&,
                         const RepetitionPattern&) = default;

 private:
  std::vector<std::uint32_t> s_;
};

/// Replica adjacency flags implied by a pattern: entry j is true iff Y
/// columns j and j+1 are copies of the same X column. K_n - 1 entries.
std::vector<bool> replicaFlags(const RepetitionPattern& s);

/// Row map i -> sigma(i) on [m], 0-based. Estimates may hold kUnmatched.
class Permutation {
 public:
  static constexpr std::uint32_t kUnmatched =
      std::numeric_limits<std::uint32_t>::max();

  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> targets)
      : t_(std::move(targets)) {}

  static Permutation identity(std::size_t m);
  static Permutation unmatched(std::size_t m);

  std::size_t size() const { return t_.size(); }
  std::uint32_t operator[](std::size_t i) const { return t_[i]; }
  std::uint32_t& operator[](std::size_t i) { return t_[i]; }
  std::span<const std::uint32_t> targets() const { return t_; }

  bool isBijection() const;
  Permutation inverse() const;
  /// (this o other)(i) = this[other[i]].
  Permutation compose(const Permutation& other) const;

  /// 1-based targets, 0 for unmatched rows.
  std::vector<std::uint64_t> toOneBased() const;
  static Permutation fromOneBased(std::span<const std::uint64_t> values);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> t_;
};

}  // namespace dbmatch
