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

#include "dbmatch/pipeline.hpp"

#include "dbmatch/errors.hpp"
#include "dbmatch/matching.hpp"

namespace dbmatch {

DeletionMode parseDeletionMode(const std::string& name) {
  if (name == "asymptotic") return DeletionMode::kAsymptotic;
  if (name == "modified") return DeletionMode::kModified;
  throw ConfigError("unknown deletion mode '" + name + "'");
}

Decoder parseDecoder(const std::string& name) {
  if (name == "typicality") return Decoder::kTypicality;
  if (name == "mindelta") return Decoder::kMinDelta;
  throw ConfigError("unknown decoder '" + name + "'");
}

std::string toString(DeletionMode mode) {
  return mode == DeletionMode::kAsymptotic ? "asymptotic" : "modified";
}

std::string toString(Decoder decoder) {
  return decoder == Decoder::kTypicality ? "typicality" : "mindelta";
}

DeletionDetection detectDeletions(const Matrix& g1, const Matrix& g2Pruned,
                                  unsigned alphabetSize,
                                  const PipelineOptions& options) {
  if (options.deletionMode == DeletionMode::kAsymptotic) {
    return detectDeletionsAsymptotic(g1, g2Pruned, alphabetSize);
  }
  return detectDeletionsModified(g1, g2Pruned, alphabetSize,
                                 options.ratioThreshold);
}

PipelineResult runNoisyPipeline(const Matrix& x, const Matrix& y,
                                const Matrix& g1, const Matrix& g2,
                                unsigned alphabetSize, std::size_t sMax,
                                const PipelineOptions& options) {
  if (g1.cols() != x.cols()) {
    throw ConfigError("G1 and X differ in column count");
  }
  if (g2.cols() != y.cols()) {
    throw ConfigError("G2 and Y differ in column count");
  }
  PipelineResult r;
  r.replicas = options.noReplicaFallback ? detectReplicasOrNone(y)
                                         : detectReplicas(y);
  const Matrix pruned = removeExtraReplicas(g2, r.replicas.isReplica);
  r.deletions = detectDeletions(g1, pruned, alphabetSize, options);
  r.sHat = estimateRepetitionPattern(r.replicas.isReplica,
                                     r.deletions.retained, x.cols());
  r.model = estimateDistributions(g1, g2, r.sHat, alphabetSize, sMax);
  r.decodingModel =
      options.decoderPseudoCount > 0.0
          ? estimateDistributions(g1, g2, r.sHat, alphabetSize, sMax,
                                  options.decoderPseudoCount)
          : r.model;
  const auto segmented = addMarkers(y, r.sHat);
  if (options.decoder == Decoder::kTypicality) {
    const double eps = options.epsilon.value_or(
        defaultTypicalityEpsilon(x.cols()));
    r.sigmaHat = deanonymizeTypicality(x, segmented, r.decodingModel, eps);
  } else {
    r.sigmaHat = deanonymizeMinDelta(x, segmented, r.decodingModel);
  }
  return r;
}

NoiselessResult runNoiselessPipeline(const Matrix& x, const Matrix& y,
                                     unsigned alphabetSize) {
  NoiselessResult r;
  r.detection = detectRepetitionsHistogram(x, y, alphabetSize);
  if (r.detection.pattern.totalColumns() != y.cols()) {
    throw InconsistentDetection(
        "histogram detection accounts for " +
        std::to_string(r.detection.pattern.totalColumns()) + " of " +
        std::to_string(y.cols()) + " Y columns");
  }
  r.sigmaHat = matchExact(x, y, r.detection.pattern);
  return r;
}

}  // namespace dbmatch
