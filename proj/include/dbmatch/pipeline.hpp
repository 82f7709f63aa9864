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

// End-to-end de-anonymization: replica detection on Y, seeded deletion
// detection, model estimation, marker placement and row matching. Also the
// seedless histogram pipeline for the noiseless case.

#pragma once

#include <optional>
#include <string>

#include "dbmatch/deletion.hpp"
#include "dbmatch/estimate.hpp"
#include "dbmatch/histogram.hpp"
#include "dbmatch/model.hpp"
#include "dbmatch/replica.hpp"

namespace dbmatch {

inline constexpr double kDefaultDecoderPseudoCount = 0.5;

enum class DeletionMode { kAsymptotic, kModified };
enum class Decoder { kTypicality, kMinDelta };

DeletionMode parseDeletionMode(const std::string& name);
Decoder parseDecoder(const std::string& name);
std::string toString(DeletionMode mode);
std::string toString(Decoder decoder);

struct PipelineOptions {
  DeletionMode deletionMode = DeletionMode::kModified;
  double ratioThreshold = kDefaultRatioThreshold;
  Decoder decoder = Decoder::kMinDelta;
  /// Declare "no replicas" when the running distances form one component
  /// rather than failing on a degenerate mixture.
  bool noReplicaFallback = true;
  /// Typicality decoder only; defaults to 4/sqrt(n).
  std::optional<double> epsilon;
  /// Pseudo-count added to every channel cell of the model handed to the
  /// decoder (the reported model stays maximum likelihood). 0 keeps unseen
  /// transitions at probability 0, which rejects any pair containing one.
  double decoderPseudoCount = kDefaultDecoderPseudoCount;
};

/// Deletion detection on G1 and the replica-pruned G2.
DeletionDetection detectDeletions(const Matrix& g1, const Matrix& g2Pruned,
                                  unsigned alphabetSize,
                                  const PipelineOptions& options);

struct PipelineResult {
  ReplicaDetection replicas;
  DeletionDetection deletions;
  RepetitionPattern sHat;
  EstimatedModel model;         // maximum likelihood
  EstimatedModel decodingModel;  // model used by the decoder
  Permutation sigmaHat;
};

/// Throws AlgorithmError subclasses when a detection stage fails.
PipelineResult runNoisyPipeline(const Matrix& x, const Matrix& y,
                                const Matrix& g1, const Matrix& g2,
                                unsigned alphabetSize, std::size_t sMax,
                                const PipelineOptions& options);

struct NoiselessResult {
  HistogramDetection detection;
  Permutation sigmaHat;
};

/// Histogram detection followed by exact matching. Throws
/// InconsistentDetection when the detected pattern does not account for
/// every column of Y.
NoiselessResult runNoiselessPipeline(const Matrix& x, const Matrix& y,
                                     unsigned alphabetSize);

}  // namespace dbmatch
