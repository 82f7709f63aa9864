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

#include "dbmatch/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "dbmatch/errors.hpp"
#include "dbmatch/gen.hpp"
#include "dbmatch/infotheory.hpp"
#include "dbmatch/io.hpp"
#include "dbmatch/matching.hpp"

namespace dbmatch {
namespace {

constexpr int kManifestSchema = 1;
constexpr const char* kVersion = "0.1.0";

std::vector<GridPoint> product(const std::vector<unsigned>& alphabets,
                               const std::vector<double>& epsilons,
                               const std::vector<double>& deltas,
                               const std::vector<double>& gammas,
                               const std::vector<std::size_t>& ms,
                               const std::vector<std::size_t>& ns,
                               const std::vector<std::size_t>& seeds) {
  std::vector<GridPoint> out;
  for (auto a : alphabets)
    for (auto e : epsilons)
      for (auto d : deltas)
        for (auto g : gammas)
          for (auto n : ns)
            for (auto s : seeds)
              for (auto m : ms) out.push_back({a, e, d, g, m, n, s});
  return out;
}

template <typename T>
std::vector<T> listOf(const nlohmann::json& j, const char* key,
                      std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) {
    auto out = v.get<std::vector<T>>();
    if (out.empty()) throw ConfigError(std::string("empty list for ") + key);
    return out;
  }
  return {v.get<T>()};
}

double xValue(ExperimentKind kind, const GridPoint& p) {
  return static_cast<double>(kind == ExperimentKind::kDeletion ? p.seeds
                                                               : p.m);
}

bool sameFlags(const std::vector<bool>& a, const std::vector<bool>& b) {
  return a == b;
}

double replicaTrial(const GridPoint& p, std::uint64_t seed) {
  const auto pair = generatePair(p.spec(), 0, seed);
  const auto det = detectReplicas(pair.y);
  return sameFlags(det.isReplica, replicaFlags(pair.pattern)) ? 0.0 : 1.0;
}

double deletionTrial(const GridPoint& p, const PipelineOptions& opt,
                     std::uint64_t seed) {
  const auto spec = p.spec();
  auto pe = makeStream(seed, StreamId::kPattern);
  const auto pattern = sampleRepetitionPattern(spec.pS, spec.columns, pe);
  if (pattern.totalColumns() == 0) {
    throw InconsistentDetection("every column was deleted");
  }
  auto se = makeStream(seed, StreamId::kSeeds);
  const auto seeds = generateSeeds(spec, pattern, p.seeds, se);
  const auto pruned = removeExtraReplicas(seeds.g2, replicaFlags(pattern));
  const auto det = detectDeletions(seeds.g1, pruned, p.alphabet, opt);
  return det.retained == pattern.retainedIndices() ? 0.0 : 1.0;
}

double matchingTrial(const GridPoint& p, const PipelineOptions& opt,
                     std::uint64_t seed) {
  const auto spec = p.spec();
  const auto pair = generatePair(spec, p.seeds, seed);
  const auto r = runNoisyPipeline(pair.x, pair.y, pair.seeds.g1,
                                  pair.seeds.g2, p.alphabet, spec.sMax, opt);
  return scoreMatch(r.sigmaHat, pair.sigma);
}

double histogramTrial(const GridPoint& p, std::uint64_t seed) {
  auto eng = makeStream(seed, StreamId::kDatabase);
  return sampleHistogramCollision(CategoricalDistribution::uniform(p.alphabet),
                                  p.m, p.n, eng)
             ? 1.0
             : 0.0;
}

std::string fmt(double v) { return io::formatDouble(v); }

std::string escapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Label parts for the grid fields that vary, other than the x axis.
std::string seriesLabel(const ExperimentPlan& plan, const GridPoint& p) {
  auto varies = [&](auto get) {
    std::set<double> vals;
    for (const auto& q : plan.grid) vals.insert(static_cast<double>(get(q)));
    return vals.size() > 1;
  };
  const bool xIsSeeds = plan.kind == ExperimentKind::kDeletion;
  std::string label;
  auto add = [&](const std::string& part) {
    if (!label.empty()) label += ", ";
    label += part;
  };
  if (varies([](const GridPoint& q) { return q.alphabet; }))
    add("|X|=" + std::to_string(p.alphabet));
  if (varies([](const GridPoint& q) { return q.epsilon; }))
    add("eps=" + fmt(p.epsilon));
  if (varies([](const GridPoint& q) { return q.delta; }))
    add("delta=" + fmt(p.delta));
  if (varies([](const GridPoint& q) { return q.gamma; }))
    add("gamma=" + fmt(p.gamma));
  if (varies([](const GridPoint& q) { return q.n; }))
    add("n=" + std::to_string(p.n));
  if (xIsSeeds && varies([](const GridPoint& q) { return q.m; }))
    add("m=" + std::to_string(p.m));
  if (!xIsSeeds && varies([](const GridPoint& q) { return q.seeds; }))
    add("seeds=" + std::to_string(p.seeds));
  return label.empty() ? plan.name : label;
}

}  // namespace

ExperimentKind parseExperimentKind(const std::string& name) {
  if (name == "replica") return ExperimentKind::kReplica;
  if (name == "deletion") return ExperimentKind::kDeletion;
  if (name == "matching") return ExperimentKind::kMatching;
  if (name == "histogram") return ExperimentKind::kHistogram;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string toString(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kReplica: return "replica";
    case ExperimentKind::kDeletion: return "deletion";
    case ExperimentKind::kMatching: return "matching";
    case ExperimentKind::kHistogram: return "histogram";
  }
  return "replica";
}

ModelSpec GridPoint::spec() const {
  return deletionDuplicationSpec(std::max<std::size_t>(m, 1), n, alphabet,
                                 epsilon, delta, gamma);
}

void ExperimentPlan::validate() const {
  if (grid.empty()) throw ConfigError("experiment grid is empty");
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (!(options.ratioThreshold > 1.0)) {
    throw ConfigError("ratio threshold must exceed 1");
  }
  if (!(options.decoderPseudoCount >= 0.0)) {
    throw ConfigError("pseudo-count must be non-negative");
  }
  if (options.epsilon && !(*options.epsilon > 0.0)) {
    throw ConfigError("typicality epsilon must be positive");
  }
  for (const auto& p : grid) {
    if (p.n == 0) throw ConfigError("n must be >= 1");
    if (kind != ExperimentKind::kDeletion && p.m == 0) {
      throw ConfigError("m must be >= 1");
    }
    if (kind == ExperimentKind::kReplica && p.n < 4) {
      throw ConfigError("replica sweeps need n >= 4");
    }
    if ((kind == ExperimentKind::kDeletion ||
         kind == ExperimentKind::kMatching) &&
        p.seeds == 0) {
      throw ConfigError("seeded sweeps need seeds >= 1");
    }
    if ((kind == ExperimentKind::kDeletion ||
         kind == ExperimentKind::kMatching) &&
        p.alphabet > kMaxRemapAlphabet) {
      throw ConfigError("seeded sweeps support alphabets up to " +
                        std::to_string(kMaxRemapAlphabet));
    }
    requireValidModel(p.spec());
  }
}

std::vector<std::size_t> histogramGrid(unsigned alphabet, std::size_t n,
                                       std::size_t points) {
  if (alphabet < 2) throw ConfigError("histogram grid needs |X| >= 2");
  if (points < 2) throw ConfigError("histogram grid needs >= 2 points");
  // Invert xi = n^2 m^{(1-k)/2} (4 pi)^{(1-k)/2} k^{k/2} for m.
  const double k = alphabet;
  const double e = (1.0 - k) / 2.0;
  const double scale = static_cast<double>(n) * static_cast<double>(n) *
                       std::pow(4.0 * M_PI, e) * std::pow(k, k / 2.0);
  auto mAt = [&](double xi) { return std::pow(xi / scale, 1.0 / e); };
  const double lo = std::log(mAt(1e-1));
  const double hi = std::log(mAt(1e-3));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const auto m = static_cast<std::size_t>(std::llround(std::exp(lo + t * (hi - lo))));
    if (out.empty() || m > out.back()) out.push_back(std::max<std::size_t>(m, 1));
  }
  return out;
}

ExperimentPlan figurePlan(const std::string& figure, bool full,
                          std::uint64_t masterSeed) {
  ExperimentPlan plan;
  plan.name = figure;
  plan.masterSeed = masterSeed;
  if (figure == "fig4") {
    plan.kind = ExperimentKind::kReplica;
    plan.grid = product({5}, {0.1, 0.2, 0.3}, {0.3}, {0.2},
                        {50, 100, 150, 200, 250, 300, 350, 400}, {100}, {0});
    plan.trials = full ? 100'000 : 10'000;
  } else if (figure == "fig5") {
    plan.kind = ExperimentKind::kDeletion;
    plan.grid = product({5}, {0.1, 0.2, 0.3}, {0.3}, {0.2}, {0}, {100},
                        {10, 20, 30, 40, 50, 75, 100, 150, 200});
    plan.trials = full ? 10'000 : 1'000;
  } else if (figure == "fig6") {
    plan.kind = ExperimentKind::kMatching;
    plan.grid = product({5}, {0.1, 0.2}, {0.3}, {0.2},
                        {64, 128, 256, 512, 1024, 2048}, {25}, {25});
    plan.trials = full ? 10'000 : 1'000;
  } else if (figure == "fig7") {
    plan.kind = ExperimentKind::kHistogram;
    for (unsigned k : {4u, 5u, 6u, 7u}) {
      auto g = product({k}, {0.0}, {0.3}, {0.2}, histogramGrid(k, 100, 7),
                       {100}, {0});
      plan.grid.insert(plan.grid.end(), g.begin(), g.end());
    }
    plan.trials = full ? 1'000'000 : 100'000;
  } else {
    throw ConfigError("unknown figure '" + figure + "'");
  }
  return plan;
}

ExperimentPlan planFromJson(const nlohmann::json& j,
                            std::uint64_t masterSeed) {
  try {
    ExperimentPlan plan;
    plan.masterSeed = masterSeed;
    plan.name = j.value("name", std::string("custom"));
    plan.kind = parseExperimentKind(j.value("kind", std::string("matching")));
    plan.grid = product(listOf<unsigned>(j, "alphabet", {5}),
                        listOf<double>(j, "epsilon", {0.1}),
                        listOf<double>(j, "delta", {0.3}),
                        listOf<double>(j, "gamma", {0.2}),
                        listOf<std::size_t>(j, "m", {100}),
                        listOf<std::size_t>(j, "n", {100}),
                        listOf<std::size_t>(j, "seeds", {0}));
    plan.trials = j.value("trials", std::size_t{1000});
    plan.options.ratioThreshold =
        j.value("ratio_threshold", kDefaultRatioThreshold);
    plan.options.deletionMode =
        parseDeletionMode(j.value("deletion_mode", std::string("modified")));
    plan.options.decoder =
        parseDecoder(j.value("decoder", std::string("mindelta")));
    plan.options.decoderPseudoCount =
        j.value("pseudo_count", kDefaultDecoderPseudoCount);
    if (j.contains("typicality_epsilon")) {
      plan.options.epsilon = j.at("typicality_epsilon").get<double>();
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

nlohmann::json toJson(const ExperimentPlan& plan) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& p : plan.grid) {
    grid.push_back({{"alphabet", p.alphabet},
                    {"epsilon", p.epsilon},
                    {"delta", p.delta},
                    {"gamma", p.gamma},
                    {"m", p.m},
                    {"n", p.n},
                    {"seeds", p.seeds}});
  }
  nlohmann::json j = {{"name", plan.name},
                      {"kind", toString(plan.kind)},
                      {"trials", plan.trials},
                      {"master_seed", plan.masterSeed},
                      {"ratio_threshold", plan.options.ratioThreshold},
                      {"pseudo_count", plan.options.decoderPseudoCount},
                      {"deletion_mode", toString(plan.options.deletionMode)},
                      {"decoder", toString(plan.options.decoder)},
                      {"grid", grid}};
  if (plan.options.epsilon) j["typicality_epsilon"] = *plan.options.epsilon;
  return j;
}

double runTrial(const ExperimentPlan& plan, std::size_t pointIndex,
                std::size_t trial, bool* algorithmError) {
  const auto& p = plan.grid.at(pointIndex);
  const std::uint64_t seed =
      deriveSeed(plan.masterSeed, StreamId::kTrial, pointIndex, trial);
  if (algorithmError) *algorithmError = false;
  try {
    switch (plan.kind) {
      case ExperimentKind::kReplica: return replicaTrial(p, seed);
      case ExperimentKind::kDeletion: return deletionTrial(p, plan.options, seed);
      case ExperimentKind::kMatching: return matchingTrial(p, plan.options, seed);
      case ExperimentKind::kHistogram: return histogramTrial(p, seed);
    }
  } catch (const AlgorithmError&) {
    if (algorithmError) *algorithmError = true;
  }
  return 1.0;
}

std::optional<double> analyticOverlay(ExperimentKind kind,
                                      const GridPoint& point) {
  if (kind == ExperimentKind::kReplica) {
    const auto spec = point.spec();
    const auto mp = trueMixtureParameters(spec.pX, spec.channel);
    double meanS = 0.0;
    for (std::size_t s = 0; s < spec.pS.size(); ++s) meanS += s * spec.pS[s];
    const auto k = static_cast<std::size_t>(
        std::llround(meanS * static_cast<double>(point.n)));
    if (k < 2 || !(mp.p0 > mp.p1)) return std::nullopt;
    return replicaErrorBound(k, point.m, (mp.p0 + mp.p1) / 2.0, mp.p0, mp.p1);
  }
  if (kind == ExperimentKind::kHistogram) {
    return histogramCollisionEstimate(point.n, static_cast<double>(point.m),
                                      point.alphabet);
  }
  return std::nullopt;
}

std::vector<SweepResult> runExperiment(const ExperimentPlan& plan) {
  plan.validate();
  // Trials are the parallel unit; kernels inside a trial run serially.
  omp_set_max_active_levels(1);
  std::vector<SweepResult> out;
  out.reserve(plan.grid.size());
  std::vector<double> outcome(plan.trials);
  std::vector<unsigned char> failed(plan.trials);
  for (std::size_t pi = 0; pi < plan.grid.size(); ++pi) {
    const auto start = std::chrono::steady_clock::now();
    const auto t = static_cast<std::ptrdiff_t>(plan.trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t tt = 0; tt < t; ++tt) {
      bool err = false;
      outcome[tt] = runTrial(plan, pi, static_cast<std::size_t>(tt), &err);
      failed[tt] = err ? 1 : 0;
    }
    SweepResult r;
    r.point = plan.grid[pi];
    r.trials = plan.trials;
    for (std::size_t k = 0; k < plan.trials; ++k) {
      r.errors += outcome[k];
      r.exceptions += failed[k];
    }
    r.rate = r.errors / static_cast<double>(r.trials);
    r.overlay = analyticOverlay(plan.kind, r.point);
    r.wallSeconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    out.push_back(r);
  }
  return out;
}

std::string csvHeader(ExperimentKind kind) {
  if (kind == ExperimentKind::kHistogram) {
    return "alphabet,m,n,trials,errors,rate";
  }
  return "alphabet,epsilon,delta,gamma,m,n,seeds,trials,errors,rate";
}

std::string toCsv(ExperimentKind kind, const std::vector<SweepResult>& rows) {
  std::string out = csvHeader(kind) + "\n";
  for (const auto& r : rows) {
    const auto& p = r.point;
    if (kind == ExperimentKind::kHistogram) {
      out += std::to_string(p.alphabet) + "," + std::to_string(p.m) + "," +
             std::to_string(p.n) + ",";
    } else {
      out += std::to_string(p.alphabet) + "," + fmt(p.epsilon) + "," +
             fmt(p.delta) + "," + fmt(p.gamma) + "," + std::to_string(p.m) +
             "," + std::to_string(p.n) + "," + std::to_string(p.seeds) + ",";
    }
    out += std::to_string(r.trials) + "," + fmt(r.errors) + "," +
           fmt(r.rate) + "\n";
  }
  return out;
}

std::vector<SweepResult> parseSweepCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("sweep CSV is empty");
  std::map<std::string, std::size_t> col;
  {
    std::istringstream hs(line);
    std::string name;
    std::size_t k = 0;
    while (std::getline(hs, name, ',')) col[name] = k++;
  }
  for (const char* need : {"alphabet", "m", "n", "trials", "errors", "rate"}) {
    if (!col.count(need)) {
      throw ConfigError(std::string("sweep CSV lacks column ") + need);
    }
  }
  std::vector<SweepResult> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != col.size()) {
      throw ConfigError("sweep CSV: ragged line '" + line + "'");
    }
    auto num = [&](const char* name, double fallback) {
      auto it = col.find(name);
      return it == col.end() ? fallback : std::stod(cells[it->second]);
    };
    auto whole = [&](const char* name, std::size_t fallback) {
      auto it = col.find(name);
      return it == col.end()
                 ? fallback
                 : static_cast<std::size_t>(std::stoull(cells[it->second]));
    };
    SweepResult r;
    GridPoint defaults;
    r.point.alphabet = static_cast<unsigned>(whole("alphabet", 0));
    r.point.epsilon = num("epsilon", 0.0);
    r.point.delta = num("delta", defaults.delta);
    r.point.gamma = num("gamma", defaults.gamma);
    r.point.m = whole("m", 0);
    r.point.n = whole("n", 0);
    r.point.seeds = whole("seeds", 0);
    r.trials = whole("trials", 0);
    r.errors = num("errors", 0.0);
    r.rate = num("rate", 0.0);
    out.push_back(r);
  }
  return out;
}

nlohmann::json manifest(const ExperimentPlan& plan,
                        const std::vector<SweepResult>& results,
                        bool includeTiming) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json row = {{"alphabet", r.point.alphabet},
                          {"epsilon", r.point.epsilon},
                          {"delta", r.point.delta},
                          {"gamma", r.point.gamma},
                          {"m", r.point.m},
                          {"n", r.point.n},
                          {"seeds", r.point.seeds},
                          {"trials", r.trials},
                          {"errors", r.errors},
                          {"rate", r.rate},
                          {"algorithm_errors", r.exceptions}};
    row["overlay"] = r.overlay ? nlohmann::json(*r.overlay) : nlohmann::json();
    if (includeTiming) row["wall_seconds"] = r.wallSeconds;
    rows.push_back(row);
  }
  return {{"schema_version", kManifestSchema},
          {"tool", "dbmatch"},
          {"version", kVersion},
          {"master_seed", plan.masterSeed},
          {"csv_columns", csvHeader(plan.kind)},
          {"plan", toJson(plan)},
          {"results", rows}};
}

std::string renderSvg(const ExperimentPlan& plan,
                      const std::vector<SweepResult>& results) {
  if (results.empty()) throw ConfigError("no results to plot");
  const bool logX = plan.kind == ExperimentKind::kHistogram;
  const double width = 720, height = 460;
  const double left = 80, right = 190, top = 40, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;

  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> rate, overlay;
  };
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& r : results) {
    const auto label = seriesLabel(plan, r.point);
    auto [it, fresh] = index.emplace(label, series.size());
    if (fresh) series.push_back({label, {}, {}});
    auto& s = series[it->second];
    const double x = xValue(plan.kind, r.point);
    if (logX && x <= 0) continue;
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    if (r.rate > 0) {
      s.rate.emplace_back(x, r.rate);
      ymin = std::min(ymin, r.rate);
      ymax = std::max(ymax, r.rate);
    }
    if (r.overlay && *r.overlay > 0 && *r.overlay <= 1.0) {
      s.overlay.emplace_back(x, *r.overlay);
      ymin = std::min(ymin, *r.overlay);
      ymax = std::max(ymax, *r.overlay);
    }
  }
  if (!(ymin <= ymax)) ymin = 1e-3, ymax = 1.0;
  const double ylo = std::floor(std::log10(ymin));
  const double yhi = std::max(ylo + 1.0, std::ceil(std::log10(ymax)));
  if (xmin == xmax) xmin = xmin / 2, xmax = xmax * 2 + 1;
  const double xlo = logX ? std::log10(xmin) : xmin;
  const double xhi = logX ? std::log10(xmax) : xmax;
  auto px = [&](double x) {
    const double v = logX ? std::log10(x) : x;
    return left + (v - xlo) / (xhi - xlo) * pw;
  };
  auto py = [&](double y) {
    return top + (yhi - std::log10(y)) / (yhi - ylo) * ph;
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\" font-family=\"sans-serif\" "
    << "font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" "
    << "font-size=\"14\">" << escapeXml(plan.name) << ": "
    << toString(plan.kind) << " error rate</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = ylo; d <= yhi + 1e-9; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    o << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << y
      << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << y + 4
      << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  std::vector<double> xticks;
  if (logX) {
    for (double d = std::floor(xlo); d <= std::ceil(xhi); d += 1.0) {
      for (int mult : {1, 2, 5}) {
        const double v = mult * std::pow(10.0, d);
        if (v >= xmin && v <= xmax) xticks.push_back(v);
      }
    }
  } else {
    for (int k = 0; k <= 5; ++k) xticks.push_back(xmin + (xmax - xmin) * k / 5);
  }
  for (double v : xticks) {
    const double x = px(v);
    o << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << top
      << "\" y2=\"" << top + ph << "\" stroke=\"#eee\"/>\n";
    o << "<text x=\"" << x << "\" y=\"" << top + ph + 18
      << "\" text-anchor=\"middle\">" << fmt(std::round(v)) << "</text>\n";
  }
  const std::string xlabel =
      plan.kind == ExperimentKind::kDeletion ? "seeds" : "rows m";
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16
    << "\" text-anchor=\"middle\">" << xlabel << (logX ? " (log)" : "")
    << "</text>\n";
  o << "<text transform=\"rotate(-90)\" x=\"" << -(top + ph / 2) << "\" y=\"18\""
    << " text-anchor=\"middle\">error rate (log)</text>\n";

  auto polyline = [&](const std::vector<std::pair<double, double>>& pts,
                      const char* color, bool dashed) {
    if (pts.empty()) return;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) o << " stroke-dasharray=\"5,4\"";
    o << " points=\"";
    for (const auto& [x, y] : pts) o << px(x) << "," << py(y) << " ";
    o << "\"/>\n";
    if (!dashed) {
      for (const auto& [x, y] : pts) {
        o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
  };
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* c = colors[k % 8];
    polyline(series[k].rate, c, false);
    polyline(series[k].overlay, c, true);
    const double ly = top + 16 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << left + pw + 12 << "\" x2=\"" << left + pw + 34
      << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\"" << c
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">"
      << escapeXml(series[k].label) << "</text>\n";
  }
  if (plan.kind == ExperimentKind::kReplica ||
      plan.kind == ExperimentKind::kHistogram) {
    const double ly = top + 16 + 18.0 * static_cast<double>(series.size());
    o << "<line x1=\"" << left + pw + 12 << "\" x2=\"" << left + pw + 34
      << "\" y1=\"" << ly << "\" y2=\"" << ly
      << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
    o << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">"
      << (plan.kind == ExperimentKind::kReplica ? "Chernoff bound"
                                                : "analytic estimate")
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emitReport(const ExperimentPlan& plan,
                const std::vector<SweepResult>& results,
                const std::filesystem::path& outDir, bool includeTiming) {
  if (results.empty()) throw ConfigError("refusing to write an empty report");
  io::writeText(outDir / (plan.name + ".csv"), toCsv(plan.kind, results));
  io::writeJson(outDir / (plan.name + ".json"),
                manifest(plan, results, includeTiming));
  io::writeText(outDir / (plan.name + ".svg"), renderSvg(plan, results));
}

}  // namespace dbmatch
