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

// Monte Carlo sweeps and their reports.
//
// Trial t of grid point p draws every random quantity from streams derived
// from (master seed, p, t), and the per-trial outcomes are summed in trial
// order. Results therefore do not depend on the number of threads.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dbmatch/pipeline.hpp"
#include "json.hpp"

namespace dbmatch {

enum class ExperimentKind {
  kReplica,    // replica detection error vs m
  kDeletion,   // seeded deletion detection error vs seed count
  kMatching,   // end-to-end mismatch fraction vs m
  kHistogram,  // non-unique column histograms vs m (noiseless)
};

ExperimentKind parseExperimentKind(const std::string& name);
std::string toString(ExperimentKind kind);

struct GridPoint {
  unsigned alphabet = 5;
  double epsilon = 0.0;  // symmetric channel crossover
  double delta = 0.3;
  double gamma = 0.2;
  std::size_t m = 0;      // unused by deletion sweeps
  std::size_t n = 100;
  std::size_t seeds = 0;  // Lambda

  ModelSpec spec() const;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct ExperimentPlan {
  std::string name;
  ExperimentKind kind = ExperimentKind::kReplica;
  std::vector<GridPoint> grid;
  std::size_t trials = 1;
  std::uint64_t masterSeed = 1;
  PipelineOptions options;

  /// Throws ConfigError for an empty grid, zero trials or invalid models.
  void validate() const;
};

inline const std::vector<std::string> kFigureNames = {"fig4", "fig5", "fig6",
                                                      "fig7"};

/// Preset sweeps. `full` restores the large trial counts.
ExperimentPlan figurePlan(const std::string& figure, bool full,
                          std::uint64_t masterSeed);

/// Custom sweep: the Cartesian product of the listed parameter values.
/// Keys: kind, alphabet, epsilon, delta, gamma, m, n, seeds (scalars or
/// arrays), trials, ratio_threshold, deletion_mode, decoder,
/// typicality_epsilon, pseudo_count, name.
ExperimentPlan planFromJson(const nlohmann::json& j, std::uint64_t masterSeed);
nlohmann::json toJson(const ExperimentPlan& plan);

/// m values spanning predicted collision rates 1e-1 .. 1e-3.
std::vector<std::size_t> histogramGrid(unsigned alphabet, std::size_t n,
                                       std::size_t points);

struct SweepResult {
  GridPoint point;
  std::size_t trials = 0;
  double errors = 0.0;  // event count, or summed mismatch fraction
  double rate = 0.0;    // errors / trials
  std::size_t exceptions = 0;  // trials ended by an algorithm error
  double wallSeconds = 0.0;
  std::optional<double> overlay;  // analytic bound or estimate
};

/// Outcome of one trial in [0, 1]. Algorithm errors count as 1.
double runTrial(const ExperimentPlan& plan, std::size_t pointIndex,
                std::size_t trial, bool* algorithmError = nullptr);

std::optional<double> analyticOverlay(ExperimentKind kind,
                                      const GridPoint& point);

std::vector<SweepResult> runExperiment(const ExperimentPlan& plan);

std::string csvHeader(ExperimentKind kind);
std::string toCsv(ExperimentKind kind, const std::vector<SweepResult>& rows);
/// Columns are located by header name.
std::vector<SweepResult> parseSweepCsv(const std::string& text);

nlohmann::json manifest(const ExperimentPlan& plan,
                        const std::vector<SweepResult>& results,
                        bool includeTiming);

/// Log-scale line plot: semilog-y, or log-log for histogram sweeps.
std::string renderSvg(const ExperimentPlan& plan,
                      const std::vector<SweepResult>& results);

/// Writes <name>.csv, <name>.json and <name>.svg under outDir.
void emitReport(const ExperimentPlan& plan,
                const std::vector<SweepResult>& results,
                const std::filesystem::path& outDir, bool includeTiming);

}  // namespace dbmatch
