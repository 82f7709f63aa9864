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

// Acceptance run. Each check prints its measurements followed by one
// "criterion N ...: PASS|FAIL" line; the exit status is non-zero when any
// check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dbmatch/deletion.hpp"
#include "dbmatch/errors.hpp"
#include "dbmatch/experiment.hpp"
#include "dbmatch/gen.hpp"
#include "dbmatch/histogram.hpp"
#include "dbmatch/infotheory.hpp"
#include "dbmatch/io.hpp"
#include "dbmatch/replica.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dbmatch;

namespace {

constexpr std::uint64_t kMasterSeed = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream log;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << "    violated: " << what << "\n";
    }
  }
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fitLine(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

std::string fmt(double v) { return io::formatDouble(v); }

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Sweep results grouped by one grid coordinate, in grid order.
std::map<double, std::vector<SweepResult>> curvesBy(
    const std::vector<SweepResult>& rows,
    const std::function<double(const GridPoint&)>& key) {
  std::map<double, std::vector<SweepResult>> out;
  for (const auto& r : rows) out[key(r.point)].push_back(r);
  return out;
}

std::vector<SweepResult> runFigure(const std::string& fig, Outcome& o,
                                   double budgetSeconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto plan = figurePlan(fig, false, kMasterSeed);
  auto rows = runExperiment(plan);
  const double secs = secondsSince(t0);
  o.log << "    " << fig << ": " << plan.grid.size() << " points x "
        << plan.trials << " trials in " << fmt(std::round(secs)) << " s\n";
  o.require(secs <= budgetSeconds,
            "runtime " + fmt(secs) + " s exceeds " + fmt(budgetSeconds) + " s");
  return rows;
}

void printRates(Outcome& o, const std::string& label,
                const std::vector<SweepResult>& curve,
                const std::function<std::size_t(const GridPoint&)>& x) {
  o.log << "    " << label << ":";
  for (const auto& r : curve) o.log << " " << x(r.point) << "->" << fmt(r.rate);
  o.log << "\n";
}

// ---------------------------------------------------------------------------

Outcome replicaDecay() {
  Outcome o;
  auto rows = runFigure("fig4", o, 600);
  auto curves = curvesBy(rows, [](const GridPoint& p) { return p.epsilon; });
  for (const auto& [eps, curve] : curves) {
    printRates(o, "eps=" + fmt(eps), curve,
               [](const GridPoint& p) { return p.m; });
    std::vector<double> x, y;
    for (const auto& r : curve) {
      if (r.rate > 0) {
        x.push_back(static_cast<double>(r.point.m));
        y.push_back(std::log10(r.rate));
      }
    }
    if (x.size() < 3) {
      o.require(false, "eps=" + fmt(eps) + ": only " +
                           std::to_string(x.size()) +
                           " non-zero points, no log-linear fit possible");
      continue;
    }
    const auto f = fitLine(x, y);
    o.log << "    eps=" << fmt(eps) << " fit over " << x.size()
          << " points: slope=" << fmt(f.slope) << " R2=" << fmt(f.r2) << "\n";
    o.require(f.slope < 0, "eps=" + fmt(eps) + ": slope not negative");
    o.require(f.r2 >= 0.9, "eps=" + fmt(eps) + ": R2 below 0.9");
  }
  // Larger crossover never detects better.
  std::vector<double> eps;
  for (const auto& [e, c] : curves) eps.push_back(e);
  for (std::size_t a = 0; a + 1 < eps.size(); ++a) {
    const auto& lo = curves[eps[a]];
    const auto& hi = curves[eps[a + 1]];
    for (std::size_t i = 0; i < lo.size(); ++i) {
      o.require(lo[i].rate <= hi[i].rate,
                "m=" + std::to_string(lo[i].point.m) + ": eps=" +
                    fmt(eps[a]) + " worse than eps=" + fmt(eps[a + 1]));
    }
  }
  return o;
}

Outcome mixtureSeparation() {
  Outcome o;
  std::mt19937_64 eng(deriveSeed(kMasterSeed, StreamId::kTrial, 2));
  std::exponential_distribution<double> e(1.0);
  int ok = 0;
  double minGap = 1.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + static_cast<std::size_t>(t) % 7;
    std::vector<double> px(k);
    double s = 0;
    for (auto& v : px) s += (v = e(eng));
    for (auto& v : px) v /= s;
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (auto& r : rows) {
      double rs = 0;
      for (auto& v : r) rs += (v = e(eng));
      for (auto& v : r) v /= rs;
    }
    const auto mp = trueMixtureParameters(CategoricalDistribution(px),
                                          ObfuscationChannel(rows));
    ok += mp.p0 > mp.p1;
    minGap = std::min(minGap, mp.p0 - mp.p1);
  }
  o.log << "    " << ok << "/200 channels with p0 > p1, smallest gap "
        << fmt(minGap) << "\n";
  o.require(ok == 200, "p0 <= p1 on some channel");
  return o;
}

Outcome momentEstimatorConsistency() {
  Outcome o;
  const double p0 = 0.8, p1 = 0.35;
  const std::uint32_t m = 10'000;
  // Share of independent adjacencies at delta = 0.3, gamma = 0.2:
  // E[K] = 0.9 n columns, of which 0.2 n follow a replica.
  const double weight = 1.0 - 0.2 / 0.9;
  int good = 0, degenerate = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::mt19937_64 eng(deriveSeed(kMasterSeed, StreamId::kTrial, 3, rep));
    std::binomial_distribution<std::uint32_t> b0(m, p0), b1(m, p1);
    std::bernoulli_distribution pick(weight);
    RunningDistances w;
    w.rows = m;
    for (int i = 0; i < 1000; ++i) w.w.push_back(pick(eng) ? b0(eng) : b1(eng));
    try {
      const auto est = estimateMixture(w);
      const double err = std::max(std::abs(est.p0 - p0), std::abs(est.p1 - p1));
      worst = std::max(worst, err);
      good += err < 0.02;
    } catch (const DegenerateMixture&) {
      ++degenerate;
    }
  }
  o.log << "    " << good << "/100 runs within 0.02 (worst error " << fmt(worst)
        << ", " << degenerate << " degenerate)\n";
  o.require(good >= 95, "fewer than 95 accurate runs");
  return o;
}

Outcome deletionExactRecovery() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = instances::shiftChannelSpec(10'000, 10);
  const auto s = instances::tenColumnPattern();
  const auto q = seedHammingParameters(spec.pX, spec.channel,
                                       symmetryGroup(4).front());
  o.log << "    identity remap: q0=" << fmt(q.q0) << " q1=" << fmt(q.q1)
        << "\n";

  auto fixedEng = makeStream(kMasterSeed, StreamId::kSeeds, 4);
  const auto fixed = generateSeeds(spec, s, 10'000, fixedEng);
  std::vector<std::size_t> deleted;
  try {
    const auto det = detectDeletionsAsymptotic(fixed.g1, fixed.g2, 4);
    std::vector<bool> kept(10, false);
    for (auto j : det.retained) kept[j] = true;
    for (std::size_t j = 0; j < 10; ++j) {
      if (!kept[j]) deleted.push_back(j + 1);
    }
  } catch (const AlgorithmError& e) {
    o.log << "    fixed instance: " << e.what() << "\n";
  }
  o.log << "    fixed instance deleted set {";
  for (std::size_t i = 0; i < deleted.size(); ++i) {
    o.log << (i ? "," : "") << deleted[i];
  }
  o.log << "}\n";
  o.require(deleted == std::vector<std::size_t>{4, 6, 10},
            "fixed instance deleted set differs from {4,6,10}");

  int exact = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto eng = makeStream(kMasterSeed, StreamId::kSeeds, 40, t);
    const auto seeds = generateSeeds(spec, s, 10'000, eng);
    try {
      exact += detectDeletionsAsymptotic(seeds.g1, seeds.g2, 4).retained ==
               s.retainedIndices();
    } catch (const AlgorithmError&) {
    }
  }
  const double secs = secondsSince(t0);
  o.log << "    exact recovery in " << exact << "/100 trials, "
        << fmt(std::round(secs)) << " s\n";
  o.require(exact >= 99, "fewer than 99 exact recoveries");
  o.require(secs <= 60, "runtime above 1 min");
  return o;
}

Outcome deletionTrend() {
  Outcome o;
  auto rows = runFigure("fig5", o, 600);
  auto curves = curvesBy(rows, [](const GridPoint& p) { return p.epsilon; });
  for (const auto& [eps, curve] : curves) {
    printRates(o, "eps=" + fmt(eps), curve,
               [](const GridPoint& p) { return p.seeds; });
    int bad = 0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
      bad += curve[i + 1].rate >= curve[i].rate;
    }
    o.log << "    eps=" << fmt(eps) << ": " << bad
          << " adjacent pairs not strictly decreasing\n";
    o.require(bad <= 1, "eps=" + fmt(eps) + ": more than one non-decreasing "
                        "adjacent pair");
  }
  std::vector<double> eps;
  for (const auto& [e, c] : curves) eps.push_back(e);
  for (std::size_t a = 0; a + 1 < eps.size(); ++a) {
    const auto& lo = curves[eps[a]];
    const auto& hi = curves[eps[a + 1]];
    for (std::size_t i = 0; i < lo.size(); ++i) {
      o.require(lo[i].rate <= hi[i].rate,
                "seeds=" + std::to_string(lo[i].point.seeds) + ": eps=" +
                    fmt(eps[a]) + " worse than eps=" + fmt(eps[a + 1]));
    }
  }
  return o;
}

Outcome matchingTrend() {
  Outcome o;
  auto rows = runFigure("fig6", o, 1800);
  auto curves = curvesBy(rows, [](const GridPoint& p) { return p.epsilon; });
  for (const auto& [eps, curve] : curves) {
    printRates(o, "eps=" + fmt(eps), curve,
               [](const GridPoint& p) { return p.m; });
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
      o.require(curve[i + 1].rate >= curve[i].rate,
                "eps=" + fmt(eps) + ": rate falls from m=" +
                    std::to_string(curve[i].point.m) + " to m=" +
                    std::to_string(curve[i + 1].point.m));
    }
  }
  const auto& lo = curves.begin()->second;
  const auto& hi = curves.rbegin()->second;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    o.require(hi[i].rate > lo[i].rate,
              "m=" + std::to_string(lo[i].point.m) +
                  ": larger crossover not worse");
  }
  return o;
}

Outcome histogramSlopes() {
  Outcome o;
  auto rows = runFigure("fig7", o, 1200);
  const std::map<unsigned, double> measured = {
      {4, -1.40}, {5, -1.97}, {6, -2.51}, {7, -2.97}};
  auto curves = curvesBy(
      rows, [](const GridPoint& p) { return static_cast<double>(p.alphabet); });
  for (const auto& [kd, curve] : curves) {
    const auto k = static_cast<unsigned>(kd);
    printRates(o, "|X|=" + std::to_string(k), curve,
               [](const GridPoint& p) { return p.m; });
    std::vector<double> x, y;
    for (const auto& r : curve) {
      if (r.rate > 0) {
        x.push_back(std::log10(static_cast<double>(r.point.m)));
        y.push_back(std::log10(r.rate));
      }
    }
    if (x.size() < 3) {
      o.require(false, "|X|=" + std::to_string(k) + ": too few non-zero points");
      continue;
    }
    const auto f = fitLine(x, y);
    const double asym = (1.0 - k) / 2.0;
    o.log << "    |X|=" << k << ": slope " << fmt(f.slope) << " (reference "
          << fmt(measured.at(k)) << ", asymptotic " << fmt(asym) << ")\n";
    o.require(std::abs(f.slope - measured.at(k)) <= 0.3,
              "|X|=" + std::to_string(k) + ": slope off the reference by > 0.3");
    o.require(std::abs(f.slope - asym) <= 0.35,
              "|X|=" + std::to_string(k) +
                  ": slope off the asymptote by > 0.35");
  }
  return o;
}

Outcome capacityIdentities() {
  Outcome o;
  std::mt19937_64 eng(deriveSeed(kMasterSeed, StreamId::kTrial, 8));
  std::exponential_distribution<double> e(1.0);
  double worstId = 0.0, worstSplit = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 2 + static_cast<std::size_t>(t) % 4;
    const std::size_t sMax = 1 + static_cast<std::size_t>(t) % 3;
    std::vector<double> px(k), ps(sMax + 1);
    double a = 0, b = 0;
    for (auto& v : px) a += (v = e(eng));
    for (auto& v : px) v /= a;
    for (auto& v : ps) b += (v = e(eng));
    for (auto& v : ps) v /= b;
    const CategoricalDistribution pX(px), pS(ps);
    const auto id = ObfuscationChannel::symmetric(static_cast<unsigned>(k), 0.0);
    const double c = matchingCapacity(pX, id, pS);
    worstId = std::max(worstId, std::abs(c - (1.0 - ps[0]) * entropy(pX)));

    // Same capacity through a noisy channel, rebuilt from s >= 1 only.
    const auto noisy = ObfuscationChannel::symmetric(static_cast<unsigned>(k), 0.15);
    double split = 0.0;
    for (std::size_t s = 1; s <= sMax; ++s) {
      split += ps[s] * replicatedMutualInformation(pX, noisy, s);
    }
    o.require(replicatedMutualInformation(pX, noisy, 0) == 0.0,
              "I(X; Y^0) is not zero");
    worstSplit =
        std::max(worstSplit, std::abs(matchingCapacity(pX, noisy, pS) - split));
  }
  o.log << "    identity channel: max |C - (1-delta)H(X)| = " << fmt(worstId)
        << "\n    s >= 1 decomposition: max gap " << fmt(worstSplit) << "\n";
  o.require(worstId <= 1e-9, "identity-channel capacity off by more than 1e-9");
  o.require(worstSplit <= 1e-9, "s = 0 term contributes");

  int drops = 0;
  for (unsigned k = 2; k <= 6; ++k) {
    const auto pS = CategoricalDistribution({0.3, 0.5, 0.2});
    const auto pX = CategoricalDistribution::uniform(k);
    const double top = (k - 1.0) / k;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40; ++i) {
      const double c =
          matchingCapacity(pX, ObfuscationChannel::symmetric(k, top * i / 40), pS);
      if (c > prev + 1e-12) ++drops;
      prev = c;
    }
  }
  o.log << "    capacity increases along the eps grid: " << drops << "\n";
  o.require(drops == 0, "capacity increases with eps somewhere");
  return o;
}

Outcome oracleEquivalence() {
  Outcome o;
  const auto spec = deletionDuplicationSpec(6, 4, 2, 0.0, 0.3, 0.2);
  int matchAgree = 0, detectAgree = 0, errors = 0, instances = 0;
  std::size_t emptyY = 0;
  // Draws that delete every column are rejected by the generator; they are
  // not instances and are replaced by the next draw.
  for (std::uint64_t t = 0; instances < 1000; ++t) {
    DatabasePair p;
    try {
      p = generatePair(spec, 0, deriveSeed(kMasterSeed, StreamId::kTrial, 9, t));
    } catch (const ConfigError&) {
      ++emptyY;
      continue;
    }
    ++instances;
    try {
      const auto retained = p.pattern.retainedIndices();
      const auto offsets = p.pattern.runOffsets();
      std::vector<std::vector<int>> xb(6), yb(6);
      for (std::size_t r = 0; r < 6; ++r) {
        for (auto j : retained) {
          xb[r].push_back(p.x(r, j));
          yb[r].push_back(p.y(r, offsets[j]));
        }
      }
      const auto sigma = matchExact(p.x, p.y, p.pattern);
      matchAgree += std::vector<std::uint32_t>(sigma.targets().begin(),
                                               sigma.targets().end()) ==
                    oracle::exhaustiveMatch(xb, yb);
      const auto det = detectRepetitionsHistogram(p.x, p.y, 2);
      detectAgree +=
          det.pattern == RepetitionPattern(oracle::histogramPattern(p.x, p.y, 2)) &&
          det.ambiguous() == !oracle::histogramsUnique(p.x, 2);
    } catch (const std::exception& e) {
      if (errors++ == 0) o.log << "    first error: " << e.what() << "\n";
    }
  }
  o.log << "    " << emptyY << " draws with every column deleted skipped\n"
        << "    matchExact agrees on " << matchAgree
        << "/1000, histogram detection on " << detectAgree << "/1000\n";
  o.require(matchAgree == 1000, "matchExact disagrees with the oracle");
  o.require(detectAgree == 1000, "histogram detection disagrees with the oracle");
  return o;
}

// --- CLI determinism -------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every regular file below `dir`, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).string()] = slurp(e.path());
    }
  }
  return out;
}

int runCli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + DBMATCH_CLI_PATH + "\" " + args +
                          " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc;
}

struct CliStep {
  std::string name;
  std::string args;  // {in} = round directory, {out} = this step's directory
};

std::string expand(std::string s, const fs::path& in, const fs::path& out) {
  for (auto [key, val] : {std::pair<std::string, std::string>{"{in}", in.string()},
                          {"{out}", out.string()}}) {
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key)) {
      s.replace(pos, key.size(), val);
    }
  }
  return s;
}

// Runs every subcommand once into `root`; returns false on a non-zero exit.
bool cliRound(const fs::path& root, int threads, Outcome& o) {
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "custom.json";
  io::writeJson(cfg, {{"kind", "matching"},
                      {"m", {32, 64}},
                      {"n", 20},
                      {"seeds", 30},
                      {"epsilon", {0.1, 0.2}},
                      {"trials", 8}});
  const std::string t = "--seed 7 --threads " + std::to_string(threads) +
                        " --out-dir {out} ";
  const std::vector<CliStep> steps = {
      {"gen", "gen --m 300 --n 40 --seeds 400 --epsilon 0.05"},
      {"gen0", "gen --m 300 --n 40 --seeds 0 --epsilon 0"},
      {"detect-replicas", "detect-replicas --y {in}/gen/Y.csv"},
      {"detect-deletions",
       "detect-deletions --g1 {in}/gen/G1.csv --g2 {in}/gen/G2.csv --flags "
       "{in}/gen/replica_flags.csv"},
      {"detect-deletions-asym",
       "detect-deletions --g1 {in}/gen/G1.csv --g2 {in}/gen/G2.csv --flags "
       "{in}/gen/replica_flags.csv --mode asymptotic"},
      {"estimate",
       "estimate --g1 {in}/gen/G1.csv --g2 {in}/gen/G2.csv --flags "
       "{in}/gen/replica_flags.csv --retained "
       "{in}/detect-deletions/retained.csv"},
      {"match",
       "match --x {in}/gen/X.csv --y {in}/gen/Y.csv --g1 {in}/gen/G1.csv "
       "--g2 {in}/gen/G2.csv --sigma {in}/gen/sigma.csv"},
      {"match-typicality",
       "match --x {in}/gen/X.csv --y {in}/gen/Y.csv --g1 {in}/gen/G1.csv "
       "--g2 {in}/gen/G2.csv --decoder typicality"},
      {"match-noiseless",
       "match-noiseless --x {in}/gen0/X.csv --y {in}/gen0/Y.csv --sigma "
       "{in}/gen0/sigma.csv"},
      {"capacity", "capacity --epsilon 0.2"},
      {"experiment-custom",
       "--config " + cfg.string() + " experiment custom"},
      {"experiment-fig4", "experiment fig4 --trials 3"},
      {"experiment-fig5", "experiment fig5 --trials 3"},
      {"experiment-fig6", "experiment fig6 --trials 2"},
      {"experiment-fig7", "experiment fig7 --trials 20"},
  };
  bool ok = true;
  for (const auto& st : steps) {
    const fs::path out = root / st.name;
    const int rc = runCli(expand(t + st.args, root, out), root / (st.name + ".log"));
    if (rc != 0) {
      o.log << "    " << st.name << " exited with status " << rc << "\n";
      ok = false;
    }
  }
  // Logs carry nothing but the echoed results, yet keep them out of the diff.
  for (const auto& st : steps) fs::remove(root / (st.name + ".log"));
  return ok;
}

Outcome cliDeterminism() {
  Outcome o;
  const fs::path base = fs::current_path() / "acceptance_cli";
  std::map<std::string, std::map<std::string, std::string>> runs;
  for (int threads : {1, 8}) {
    for (char pass : {'a', 'b'}) {
      const std::string key = "t" + std::to_string(threads) + pass;
      o.require(cliRound(base / key, threads, o), key + ": a subcommand failed");
      runs[key] = snapshot(base / key);
    }
  }
  const auto& ref = runs["t1a"];
  o.log << "    " << ref.size() << " output files per round\n";
  o.require(!ref.empty(), "no outputs written");
  for (const auto& [key, files] : runs) {
    if (key == "t1a") continue;
    if (files.size() != ref.size()) {
      o.require(false, key + ": file set differs");
      continue;
    }
    for (const auto& [name, bytes] : ref) {
      auto it = files.find(name);
      o.require(it != files.end() && it->second == bytes,
                key + ": " + name + " differs from t1a");
    }
  }
  fs::remove_all(base);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "replica detection decay", replicaDecay},
      {2, "mixture parameter separation", mixtureSeparation},
      {3, "moment estimator consistency", momentEstimatorConsistency},
      {4, "deletion detection exact recovery", deletionExactRecovery},
      {5, "modified deletion detection trend", deletionTrend},
      {6, "end-to-end matching trend", matchingTrend},
      {7, "histogram collision slopes", histogramSlopes},
      {8, "capacity identities", capacityIdentities},
      {9, "oracle equivalence", oracleEquivalence},
      {10, "CLI determinism", cliDeterminism},
  };
  // Optional arguments select criteria by number.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failed = 0;
  std::vector<std::string> summary;
  for (const auto& c : all) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    std::cout << "criterion " << c.id << " (" << c.name << ")\n" << std::flush;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.log << "    unexpected exception: " << e.what() << "\n";
    }
    const std::string line = "criterion " + std::to_string(c.id) + " (" +
                             c.name + "): " + (o.pass ? "PASS" : "FAIL");
    std::cout << o.log.str() << line << "\n" << std::flush;
    summary.push_back(line);
    failed += o.pass ? 0 : 1;
  }
  std::cout << "\nsummary\n";
  for (const auto& s : summary) std::cout << "  " << s << "\n";
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n"
                       : std::string("all criteria passed\n"));
  return failed ? 1 : 0;
}
