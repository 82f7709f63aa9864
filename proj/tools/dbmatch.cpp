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

// dbmatch command-line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 algorithm failure
// (degenerate mixture, misdetection, no useful remapping, inconsistent
// detections).

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "dbmatch/deletion.hpp"
#include "dbmatch/errors.hpp"
#include "dbmatch/estimate.hpp"
#include "dbmatch/experiment.hpp"
#include "dbmatch/gen.hpp"
#include "dbmatch/histogram.hpp"
#include "dbmatch/infotheory.hpp"
#include "dbmatch/io.hpp"
#include "dbmatch/matching.hpp"
#include "dbmatch/pipeline.hpp"
#include "dbmatch/replica.hpp"

namespace fs = std::filesystem;
using namespace dbmatch;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitAlgorithm = 3;

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string outDir = ".";
  std::string config;
  bool full = false;
  bool timing = false;
};

struct ModelFlags {
  std::size_t m = 1000;
  std::size_t n = 100;
  unsigned alphabet = 5;
  double epsilon = 0.1;
  double delta = 0.3;
  double gamma = 0.2;

  void attach(CLI::App* app) {
    app->add_option("--m", m, "Rows of X and Y")->capture_default_str();
    app->add_option("--n", n, "Columns of X")->capture_default_str();
    app->add_option("--alphabet", alphabet, "Alphabet size |X|")
        ->capture_default_str();
    app->add_option("--epsilon", epsilon, "Symmetric channel crossover")
        ->capture_default_str();
    app->add_option("--delta", delta, "Deletion probability")
        ->capture_default_str();
    app->add_option("--gamma", gamma, "Duplication probability")
        ->capture_default_str();
  }
};

// The model comes from --config when given, else from the flags.
ModelSpec resolveModel(const Globals& g, const ModelFlags& f) {
  ModelSpec spec =
      g.config.empty()
          ? deletionDuplicationSpec(f.m, f.n, f.alphabet, f.epsilon, f.delta,
                                    f.gamma)
          : modelSpecFromJson(io::readJson(g.config));
  requireValidModel(spec);
  return spec;
}

fs::path out(const Globals& g, const std::string& name) {
  return fs::path(g.outDir) / name;
}

json estimateJson(const MixtureEstimate& e) {
  return {{"p0", e.p0}, {"p1", e.p1}, {"tau", e.tau}, {"f1", e.f1},
          {"f2", e.f2}, {"f3", e.f3}, {"u", e.u}};
}

std::vector<std::uint64_t> oneBased(const std::vector<std::size_t>& v) {
  std::vector<std::uint64_t> o;
  for (auto x : v) o.push_back(x + 1);
  return o;
}

std::vector<std::size_t> zeroBased(const std::vector<std::uint64_t>& v) {
  std::vector<std::size_t> o;
  for (auto x : v) {
    if (x == 0) throw ConfigError("retained indices are 1-based");
    o.push_back(static_cast<std::size_t>(x - 1));
  }
  return o;
}

json deletionJson(const DeletionDetection& d) {
  std::vector<unsigned> remap(d.remap.map.begin(), d.remap.map.end());
  return {{"retained", oneBased(d.retained)},
          {"column_to_row", oneBased(d.columnToRow)},
          {"remap_index", d.remapIndex},
          {"remap", remap},
          {"mu", d.mu},
          {"threshold", d.threshold},
          {"ratio_statistic", d.ratioStatistic}};
}

Matrix pruneIfFlagged(const Matrix& g2, const std::string& flagsPath) {
  if (flagsPath.empty()) return g2;
  return removeExtraReplicas(g2, io::readFlags(flagsPath));
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dbmatch: database de-anonymization under column repetitions "
               "and obfuscation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", g.outDir, "Output directory")
      ->capture_default_str();
  app.add_option("--config", g.config,
                 "JSON file: model spec (gen, capacity) or sweep (experiment "
                 "custom)");
  app.add_flag("--full", g.full, "Ten times the default trial counts for experiments");
  app.add_flag("--timing", g.timing, "Include wall-clock timings in JSON");

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a database pair and seeds");
  ModelFlags genModel;
  genModel.attach(gen);
  std::size_t genSeeds = 0;
  gen->add_option("--seeds", genSeeds, "Seed rows (Lambda)")
      ->capture_default_str();

  // detect-replicas
  auto* dr = app.add_subcommand("detect-replicas",
                                "Flag adjacent replica columns of Y");
  std::string drY;
  dr->add_option("--y", drY, "Y matrix CSV")->required();

  // detect-deletions
  auto* dd = app.add_subcommand("detect-deletions",
                                "Seeded detection of retained columns");
  std::string ddG1, ddG2, ddFlags, ddMode = "modified";
  unsigned ddAlphabet = 5;
  double ddRatio = kDefaultRatioThreshold;
  dd->add_option("--g1", ddG1, "Seed matrix G1 CSV")->required();
  dd->add_option("--g2", ddG2, "Seed matrix G2 CSV")->required();
  dd->add_option("--flags", ddFlags,
                 "Replica flags CSV; when given, G2's extra replicas are "
                 "removed first");
  dd->add_option("--alphabet", ddAlphabet, "Alphabet size")
      ->capture_default_str();
  dd->add_option("--mode", ddMode, "asymptotic or modified")
      ->check(CLI::IsMember({"asymptotic", "modified"}))
      ->capture_default_str();
  dd->add_option("--ratio-threshold", ddRatio, "Ratio test threshold")
      ->capture_default_str();

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "Estimate the repetition pattern and the model from seeds");
  std::string esG1, esG2, esFlags, esRetained;
  unsigned esAlphabet = 5;
  std::size_t esSMax = 2;
  est->add_option("--g1", esG1, "Seed matrix G1 CSV")->required();
  est->add_option("--g2", esG2, "Seed matrix G2 CSV (all columns)")->required();
  est->add_option("--flags", esFlags, "Replica flags CSV")->required();
  est->add_option("--retained", esRetained, "Retained columns CSV (1-based)")
      ->required();
  est->add_option("--alphabet", esAlphabet, "Alphabet size")
      ->capture_default_str();
  est->add_option("--s-max", esSMax, "Largest repetition count")
      ->capture_default_str();

  // match
  auto* match = app.add_subcommand(
      "match", "Full noisy pipeline: detect, estimate and match rows");
  std::string mX, mY, mG1, mG2, mSigma, mDecoder = "mindelta",
                                        mMode = "modified";
  unsigned mAlphabet = 5;
  std::size_t mSMax = 2;
  double mRatio = kDefaultRatioThreshold;
  std::optional<double> mEpsilon;
  match->add_option("--x", mX, "X matrix CSV")->required();
  match->add_option("--y", mY, "Y matrix CSV")->required();
  match->add_option("--g1", mG1, "Seed matrix G1 CSV")->required();
  match->add_option("--g2", mG2, "Seed matrix G2 CSV")->required();
  match->add_option("--sigma", mSigma,
                    "True permutation CSV; adds errorFraction to the report");
  match->add_option("--alphabet", mAlphabet, "Alphabet size")
      ->capture_default_str();
  match->add_option("--s-max", mSMax, "Largest repetition count")
      ->capture_default_str();
  match->add_option("--decoder", mDecoder, "typicality or mindelta")
      ->check(CLI::IsMember({"typicality", "mindelta"}))
      ->capture_default_str();
  match->add_option("--epsilon", mEpsilon,
                    "Typicality tolerance (default 4/sqrt(n))");
  match->add_option("--deletion-mode", mMode, "asymptotic or modified")
      ->check(CLI::IsMember({"asymptotic", "modified"}))
      ->capture_default_str();
  match->add_option("--ratio-threshold", mRatio, "Ratio test threshold")
      ->capture_default_str();
  double mPseudo = kDefaultDecoderPseudoCount;
  match->add_option("--pseudo-count", mPseudo,
                    "Per-cell pseudo-count in the decoder's channel "
                    "(0 = maximum likelihood)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  // match-noiseless
  auto* mn = app.add_subcommand(
      "match-noiseless", "Histogram detection and exact row matching");
  std::string mnX, mnY, mnSigma;
  unsigned mnAlphabet = 5;
  mn->add_option("--x", mnX, "X matrix CSV")->required();
  mn->add_option("--y", mnY, "Y matrix CSV")->required();
  mn->add_option("--sigma", mnSigma, "True permutation CSV");
  mn->add_option("--alphabet", mnAlphabet, "Alphabet size")
      ->capture_default_str();

  // capacity
  auto* cap = app.add_subcommand("capacity", "Matching capacity of a model");
  ModelFlags capModel;
  capModel.attach(cap);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte Carlo sweeps");
  std::string expWhich;
  std::optional<std::size_t> expTrials;
  exp->add_option("figure", expWhich, "fig4, fig5, fig6, fig7 or custom")
      ->required()
      ->check(CLI::IsMember({"fig4", "fig5", "fig6", "fig7", "custom"}));
  exp->add_option("--trials", expTrials, "Override trials per grid point");
  exp->footer(
      "Outputs <name>.csv, <name>.json and <name>.svg in --out-dir.\n"
      "CSV columns:\n"
      "  fig7 / histogram sweeps: alphabet,m,n,trials,errors,rate\n"
      "  all other sweeps:        "
      "alphabet,epsilon,delta,gamma,m,n,seeds,trials,errors,rate\n"
      "rate = errors / trials. For matching sweeps errors is the summed\n"
      "per-trial mismatch fraction; otherwise it counts failed trials.\n"
      "Deletion sweeps use the seeds column as the x axis and ignore m.\n"
      "custom reads the --config JSON: kind, alphabet, epsilon, delta,\n"
      "gamma, m, n, seeds (scalars or lists), trials, ratio_threshold,\n"
      "deletion_mode, decoder, typicality_epsilon, pseudo_count, name.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    const auto t0 = std::chrono::steady_clock::now();

    if (*gen) {
      const auto spec = resolveModel(g, genModel);
      const auto pair = generatePair(spec, genSeeds, g.seed);
      io::writeMatrix(out(g, "X.csv"), pair.x);
      io::writeMatrix(out(g, "Y.csv"), pair.y);
      io::writePattern(out(g, "pattern.csv"), pair.pattern);
      io::writePermutation(out(g, "sigma.csv"), pair.sigma);
      io::writeFlags(out(g, "replica_flags.csv"), replicaFlags(pair.pattern));
      if (genSeeds > 0) {
        io::writeMatrix(out(g, "G1.csv"), pair.seeds.g1);
        io::writeMatrix(out(g, "G2.csv"), pair.seeds.g2);
      }
      json man = {{"schema_version", 1},
                  {"master_seed", g.seed},
                  {"seeds", genSeeds},
                  {"spec", toJson(spec)},
                  {"K", pair.pattern.totalColumns()}};
      io::writeJson(out(g, "manifest.json"), man);
      std::cout << "wrote " << pair.x.rows() << "x" << pair.x.cols()
                << " X and " << pair.y.rows() << "x" << pair.y.cols()
                << " Y to " << g.outDir << "\n";
    } else if (*dr) {
      const auto y = io::readMatrix(drY);
      const auto det = detectReplicas(y);
      io::writeFlags(out(g, "replica_flags.csv"), det.isReplica);
      std::size_t count = 0;
      for (bool b : det.isReplica) count += b ? 1 : 0;
      json rep = {{"estimate", estimateJson(det.estimate)},
                  {"replica_adjacencies", count},
                  {"columns", y.cols()}};
      if (g.timing) rep["wall_seconds"] = secondsSince(t0);
      io::writeJson(out(g, "replicas.json"), rep);
      std::cout << count << " replica adjacencies, tau=" << det.estimate.tau
                << "\n";
    } else if (*dd) {
      const auto g1 = io::readMatrix(ddG1);
      const auto g2 = pruneIfFlagged(io::readMatrix(ddG2), ddFlags);
      PipelineOptions opt;
      opt.deletionMode = parseDeletionMode(ddMode);
      opt.ratioThreshold = ddRatio;
      const auto det = detectDeletions(g1, g2, ddAlphabet, opt);
      io::writeIntegers(out(g, "retained.csv"), oneBased(det.retained));
      auto rep = deletionJson(det);
      rep["mode"] = ddMode;
      if (g.timing) rep["wall_seconds"] = secondsSince(t0);
      io::writeJson(out(g, "deletions.json"), rep);
      std::cout << det.retained.size() << " of " << g1.cols()
                << " columns retained\n";
    } else if (*est) {
      const auto g1 = io::readMatrix(esG1);
      const auto g2 = io::readMatrix(esG2);
      const auto flags = io::readFlags(esFlags);
      const auto retained = zeroBased(io::readIntegers(esRetained));
      const auto sHat = estimateRepetitionPattern(flags, retained, g1.cols());
      const auto model = estimateDistributions(g1, g2, sHat, esAlphabet, esSMax);
      io::writePattern(out(g, "pattern_hat.csv"), sHat);
      auto rep = toJson(model);
      rep["joint_entropy"] = model.jointEntropy();
      rep["mutual_information"] = model.mutualInformation();
      io::writeJson(out(g, "model.json"), rep);
      std::cout << "H-hat=" << model.jointEntropy()
                << " I-hat=" << model.mutualInformation() << "\n";
    } else if (*match) {
      const auto x = io::readMatrix(mX);
      const auto y = io::readMatrix(mY);
      const auto g1 = io::readMatrix(mG1);
      const auto g2 = io::readMatrix(mG2);
      PipelineOptions opt;
      opt.decoder = parseDecoder(mDecoder);
      opt.deletionMode = parseDeletionMode(mMode);
      opt.ratioThreshold = mRatio;
      opt.epsilon = mEpsilon;
      opt.decoderPseudoCount = mPseudo;
      const auto r = runNoisyPipeline(x, y, g1, g2, mAlphabet, mSMax, opt);
      io::writePermutation(out(g, "sigma_hat.csv"), r.sigmaHat);
      io::writePattern(out(g, "pattern_hat.csv"), r.sHat);
      std::size_t unmatched = 0;
      for (auto v : r.sigmaHat.targets()) {
        unmatched += v == Permutation::kUnmatched ? 1 : 0;
      }
      json rep = {{"decoder", mDecoder},
                  {"pseudo_count", mPseudo},
                  {"replicas", estimateJson(r.replicas.estimate)},
                  {"deletions", deletionJson(r.deletions)},
                  {"joint_entropy", r.model.jointEntropy()},
                  {"mutual_information", r.model.mutualInformation()},
                  {"unmatched_rows", unmatched}};
      if (opt.decoder == Decoder::kTypicality) {
        rep["epsilon"] = mEpsilon.value_or(defaultTypicalityEpsilon(x.cols()));
      }
      if (!mSigma.empty()) {
        rep["error_fraction"] =
            scoreMatch(r.sigmaHat, io::readPermutation(mSigma));
      }
      if (g.timing) rep["wall_seconds"] = secondsSince(t0);
      io::writeJson(out(g, "match.json"), rep);
      std::cout << x.rows() - unmatched << " of " << x.rows()
                << " rows matched\n";
    } else if (*mn) {
      const auto x = io::readMatrix(mnX);
      const auto y = io::readMatrix(mnY);
      const auto r = runNoiselessPipeline(x, y, mnAlphabet);
      io::writePermutation(out(g, "sigma_hat.csv"), r.sigmaHat);
      io::writePattern(out(g, "pattern_hat.csv"), r.detection.pattern);
      json groups = json::array();
      for (const auto& grp : r.detection.ambiguousGroups) {
        groups.push_back(oneBased(grp));
      }
      json rep = {{"ambiguous_histograms", groups}};
      if (!mnSigma.empty()) {
        rep["error_fraction"] =
            scoreMatch(r.sigmaHat, io::readPermutation(mnSigma));
      }
      if (g.timing) rep["wall_seconds"] = secondsSince(t0);
      io::writeJson(out(g, "match_noiseless.json"), rep);
      if (r.detection.ambiguous()) {
        std::cerr << "warning: X has " << groups.size()
                  << " groups of identical column histograms\n";
      }
    } else if (*cap) {
      const auto spec = resolveModel(g, capModel);
      const auto mp = trueMixtureParameters(spec.pX, spec.channel);
      json rep = {
          {"capacity", matchingCapacity(spec.pX, spec.channel, spec.pS)},
          {"no_obfuscation_capacity", noObfuscationCapacity(spec.pX, spec.pS)},
          {"entropy_x", entropy(spec.pX)},
          {"conditional_entropy_y_given_x",
           conditionalEntropy(spec.pX, spec.channel)},
          {"p0", mp.p0},
          {"p1", mp.p1},
          {"growth_rate", spec.growthRate()}};
      io::writeJson(out(g, "capacity.json"), rep);
      std::cout << "C=" << rep["capacity"].get<double>()
                << " bits/column, R=" << spec.growthRate() << "\n";
    } else if (*exp) {
      ExperimentPlan plan;
      if (expWhich == "custom") {
        if (g.config.empty()) {
          throw ConfigError("experiment custom needs --config <json>");
        }
        plan = planFromJson(io::readJson(g.config), g.seed);
      } else {
        plan = figurePlan(expWhich, g.full, g.seed);
      }
      if (expTrials) plan.trials = *expTrials;
      const auto results = runExperiment(plan);
      emitReport(plan, results, g.outDir, g.timing);
      std::cout << toCsv(plan.kind, results);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const AlgorithmError& e) {
    std::cerr << "algorithm failure: " << e.what() << "\n";
    return kExitAlgorithm;
  }
  return 0;
}
