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

#pragma once

#include <span>
#include <vector>

#include "dbmatch/model.hpp"

namespace dbmatch {

/// Empirical (maximum likelihood) model recovered from the seeds.
struct EstimatedModel {
  CategoricalDistribution pX;
  ObfuscationChannel channel;
  CategoricalDistribution pS;  // over {0, ..., sMax}
  /// Symbols never seen in G1; their channel rows are uniform placeholders.
  std::vector<Symbol> unobservedSymbols;

  unsigned alphabetSize() const { return static_cast<unsigned>(pX.size()); }

  /// Plug-in H(X, Y^S | S) = sum_s pS(s) [H(X) + s H(Y|X)].
  double jointEntropy() const;
  /// Plug-in I(X; Y^S | S).
  double mutualInformation() const;
};

nlohmann::json toJson(const EstimatedModel& model);
EstimatedModel estimatedModelFromJson(const nlohmann::json& j);

/// S-hat from replica flags (K_n - 1 entries) and the retained set (0-based
/// indices into [n]). Y's columns are cut into runs at every non-replica
/// adjacency and the run lengths are handed to the retained indices in
/// ascending order. Throws InconsistentDetection when the number of runs
/// differs from |retained|.
RepetitionPattern estimateRepetitionPattern(const std::vector<bool>& isReplica,
                                            std::span<const std::size_t> retained,
                                            std::size_t n);

/// Empirical p_X from G1, p_{Y|X} from G1 column r_j paired with every
/// replica of run j in G2 (rows normalised per x), and p_S from S-hat.
/// channelPseudoCount = 0 is the maximum likelihood estimate; a > 0 gives
/// p(y|x) = (N_xy + a) / (N_x + |X| a).
EstimatedModel estimateDistributions(const Matrix& g1, const Matrix& g2,
                                     const RepetitionPattern& sHat,
                                     unsigned alphabetSize, std::size_t sMax,
                                     double channelPseudoCount = 0.0);

/// log2 p(x, block | s): log2 pX(x) + sum_i log2 p(y_i | x). With s = 0 the
/// block is the erasure and only log2 pX(x) remains. -inf for impossible
/// events.
double conditionalLogProb(const EstimatedModel& model, Symbol x,
                          std::span<const Symbol> block, std::size_t s);

}  // namespace dbmatch
