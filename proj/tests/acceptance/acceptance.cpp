// Copyright 2026 The quantum-bottleneck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "qib/analytic.hpp"
#include "qib/diagnostics.hpp"
#include "qib/experiments.hpp"
#include "qib/qdib_engine.hpp"
#include "qib/qib_engine.hpp"
#include "qib/random.hpp"

using namespace qib;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Instance {
  CQState state;
  int dim_t;
  bool classical;
};

Instance random_instance(Rng& rng, int min_x, int max_x, int min_y, int max_y, int min_t, int max_t,
                         bool classical_state, bool classical_t) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))); };
  const int sx = pick(min_x, max_x), dy = pick(min_y, max_y), dt = pick(min_t, max_t);
  return {oracle::random_state(sx, dy, classical_state, rng), dt, classical_t};
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Every recorded step, kept for the conditional monotonicity check.
struct Step {
  double gamma;
  double ratio;
  double delta_f;
};
std::vector<Step> g_steps;

void record_steps(const IterationTrace& t, double gamma) {
  for (std::size_t i = 1; i < t.records.size(); ++i)
    g_steps.push_back({gamma, t.records[i].gamma_ratio, t.records[i].f - t.records[i - 1].f});
}

Verdict trace_identity() {
  Rng rng(derive_seed(1, "acceptance", 1));
  const double alphas[] = {0.0, 0.5, 1.0}, betas[] = {0.5, 2.0, 10.0};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Instance in = random_instance(rng, 1, 6, 1, 3, 1, 3, i % 2 == 1, i % 4 < 2);
    const CQChannel c = oracle::random_channel(in.dim_t, in.state.size_x(), in.classical, rng);
    const double alpha = alphas[i % 3], beta = betas[(i / 3) % 3];
    const FOperatorFamily f = f_operator(in.state, c, alpha, beta);
    double weighted = 0.0;
    for (int x = 0; x < in.state.size_x(); ++x)
      weighted += in.state.px()(x) * (c.sigma(x).matrix() * f[x].matrix()).trace().real();
    worst = std::max(worst, std::abs(oracle::f_alpha(in.state, c, alpha, beta) - weighted));
  }
  return {worst < 1e-8, "max |f - sum P Tr sigma F| = " + num(worst) + " (tol 1e-8) over 200 instances"};
}

Verdict gamma_ratio_bound() {
  Rng rng(derive_seed(1, "acceptance", 2));
  double worst = -std::numeric_limits<double>::infinity();
  int pairs = 0;
  for (int cls = 0; cls < 6; ++cls) {
    const bool classical = cls >= 3;
    const double alpha = 0.5 * (cls % 3);
    for (int k = 0; k < 1000; ++k) {
      const Instance in = random_instance(rng, 2, 5, 2, 3, 2, 3, classical, classical);
      const int sx = in.state.size_x();
      const CQChannel a = oracle::random_channel(in.dim_t, sx, classical, rng);
      const CQChannel b = oracle::random_channel(in.dim_t, sx, classical, rng);
      worst = std::max(worst, gamma_ratio(in.state, a, b, alpha, rng.uniform(0.5, 10.0)) - alpha);
      ++pairs;
    }
  }
  double const_err = 0.0;
  for (int k = 0; k < 30; ++k) {
    const double alpha = 0.5 * (k % 3);
    const Instance in = random_instance(rng, 2, 5, 2, 3, 2, 3, false, false);
    const int sx = in.state.size_x();
    const CQChannel a = CQChannel::constant(random_density(in.dim_t, false, rng), sx, false);
    const CQChannel b = CQChannel::constant(random_density(in.dim_t, false, rng), sx, false);
    const_err = std::max(const_err, std::abs(gamma_ratio(in.state, a, b, alpha, 3.0) - (alpha - 1.0)));
  }
  return {worst <= 1e-9 && const_err < 1e-10,
          "max(ratio - alpha) = " + num(worst) + " (tol 1e-9) over " + std::to_string(pairs) +
              " pairs in 6 classes; constant-channel |ratio - (alpha - 1)| = " + num(const_err) +
              " (tol 1e-10)"};
}

std::vector<Instance> g_monotone_instances;

Verdict monotone_convergence() {
  Rng rng(derive_seed(1, "acceptance", 3));
  int flagged = 0, not_converged = 0, max_iters = 0;
  double worst_rise = -std::numeric_limits<double>::infinity(), worst_terminal = 0.0;
  bool sums_finite = true;
  for (int i = 0; i < 100; ++i) {
    Instance in = random_instance(rng, 2, 6, 2, 3, 2, 3, i % 2 == 1, i % 3 == 0);
    ObjectiveConfig cfg;
    cfg.alpha = i % 2 ? 1.0 : 0.5;
    cfg.beta = rng.uniform(1.0, 11.0);
    cfg.dim_t = in.dim_t;
    cfg.classical = in.classical;
    cfg.tol = 1e-10;
    cfg.max_iters = 20000;
    cfg.seed = static_cast<std::uint64_t>(i);
    const RunResult r = run_qib(in.state, cfg);
    record_steps(r.trace, cfg.alpha);
    const auto& rec = r.trace.records;
    double sum = 0.0;
    for (std::size_t k = 1; k < rec.size(); ++k) {
      worst_rise = std::max(worst_rise, rec[k].f - rec[k - 1].f);
      sum += rec[k].step_divergence;
    }
    sums_finite = sums_finite && std::isfinite(sum);
    worst_terminal = std::max(worst_terminal, rec.back().step_divergence);
    flagged += r.trace.status == RunStatus::kMonotonicityViolated;
    not_converged += r.trace.status != RunStatus::kConverged;
    max_iters = std::max(max_iters, static_cast<int>(rec.size()));
    g_monotone_instances.push_back(std::move(in));
  }
  return {flagged == 0 && not_converged == 0 && worst_rise <= kMonotonicityTol && sums_finite &&
              worst_terminal < 1e-8,
          "100 runs, gamma = alpha in {0.5, 1}: flagged " + std::to_string(flagged) +
              ", not converged " + std::to_string(not_converged) + ", max f rise " +
              num(worst_rise) + " (tol 1e-9), max terminal step_divergence " +
              num(worst_terminal) + " (tol 1e-8), longest trace " + std::to_string(max_iters)};
}

Verdict conditional_monotonicity() {
  // Deliberately aggressive steps on the same instances.
  for (std::size_t i = 0; i < g_monotone_instances.size(); ++i) {
    const Instance& in = g_monotone_instances[i];
    ObjectiveConfig cfg;
    cfg.alpha = i % 2 ? 1.0 : 0.5;
    cfg.gamma = 0.3 * cfg.alpha;
    cfg.beta = 5.0;
    cfg.dim_t = in.dim_t;
    cfg.classical = in.classical;
    cfg.max_iters = 300;
    cfg.seed = static_cast<std::uint64_t>(i);
    record_steps(run_qib(in.state, cfg).trace, *cfg.gamma);
  }
  // Shipped demo: qubit ensemble seed 0, |X| = 256, classical |T| = 16.
  const CQState demo = gen_random_qubit_ensemble(256, 0);
  ObjectiveConfig cfg;
  cfg.alpha = 1.0;
  cfg.beta = 10.0;
  cfg.dim_t = 16;
  cfg.classical = true;
  cfg.max_iters = 300;
  cfg.seed = 0;
  int demo_flags = 0;
  for (const GammaRun& g : gamma_sweep(demo, cfg, {1.0, 0.3})) {
    record_steps(g.result.trace, g.gamma);
    if (g.gamma == 0.3)
      for (const IterationRecord& r : g.result.trace.records) demo_flags += r.violation;
  }
  int checked = 0, broken = 0;
  for (const Step& s : g_steps) {
    if (std::isnan(s.ratio) || s.ratio > s.gamma) continue;
    ++checked;
    broken += s.delta_f > 1e-9;
  }
  return {broken == 0 && demo_flags > 0,
          std::to_string(checked) + " of " + std::to_string(g_steps.size()) +
              " steps have ratio <= gamma, " + std::to_string(broken) +
              " of them raise f by more than 1e-9; demo (qubit ensemble seed 0, gamma 0.3) flags " +
              std::to_string(demo_flags) + " steps"};
}

Verdict quantum_advantage() {
  const AdvantageReport r = advantage_gap(3, 2, 1.0, 2.0);
  const double target = std::log(2.0) - 0.636514;
  bool pass = std::abs(r.gap - target) <= 1e-6;
  double worst_q = 0.0, worst_c = 0.0, worst_beat = -std::numeric_limits<double>::infinity();
  for (auto [d, n] : {std::pair{3, 2}, {5, 2}, {5, 3}, {7, 4}}) {
    const CQState s = copy_state(d);
    worst_q = std::max(worst_q, std::abs(objective_f_alpha(s, fourier_feature_channel(d, n), 1.0, 2.0) -
                                         quantum_bound(n, 2.0)));
    const double oracle_value = brute_force_classical_opt(s, n, 1.0, 2.0).value;
    worst_c = std::max(worst_c, std::abs(oracle_value - classical_bound(d, n, 2.0)));
    for (std::uint64_t restart = 0; restart < 20; ++restart) {
      ObjectiveConfig cfg;
      cfg.alpha = 1.0;
      cfg.beta = 2.0;
      cfg.dim_t = n;
      cfg.classical = true;
      cfg.seed = derive_seed(static_cast<std::uint64_t>(d * 10 + n), "restart", restart);
      cfg.tol = 1e-12;
      cfg.max_iters = 5000;
      worst_beat = std::max(worst_beat, oracle_value - run_qib(s, cfg).trace.records.back().f);
    }
  }
  pass = pass && worst_q <= 1e-9 && worst_c <= 1e-9 && worst_beat <= 1e-6;
  return {pass, "gap(3,2) = " + std::to_string(r.gap) + " (target " + std::to_string(target) +
                    " +- 1e-6); fourier vs quantum bound " + num(worst_q) +
                    " (tol 1e-9); brute force vs classical bound " + num(worst_c) +
                    " (tol 1e-9); classical restarts beat the oracle by at most " + num(worst_beat) +
                    " (tol 1e-6)"};
}

double projector_mismatch(const CQState& state, const CQChannel& channel, double beta) {
  const FOperatorFamily f0 = f_operator(state, channel, 0.0, beta);
  const FOperatorFamily score = score_operator(state, channel, beta);
  double worst = 0.0;
  for (std::size_t x = 0; x < f0.size(); ++x)
    worst = std::max(worst, (min_eigenspace_projector(f0[x]).projector.matrix() -
                             max_eigenspace_projector(score[x]).projector.matrix())
                                .cwiseAbs()
                                .maxCoeff());
  return worst;
}

Verdict qdib_monotonicity() {
  Rng rng(derive_seed(1, "acceptance", 6));
  const double betas[] = {1.0, 5.0, 20.0};
  int flagged = 0;
  double worst_rise = -std::numeric_limits<double>::infinity(), worst_proj = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(rng, 2, 7, 2, 3, 2, 4, i % 2 == 1, i % 4 < 2);
    ObjectiveConfig cfg;
    cfg.alpha = 0.0;
    cfg.beta = betas[i % 3];
    cfg.dim_t = in.dim_t;
    cfg.classical = in.classical;
    cfg.seed = static_cast<std::uint64_t>(i);
    const RunResult r = run_qdib(in.state, cfg);
    flagged += r.trace.status == RunStatus::kMonotonicityViolated;
    for (std::size_t k = 1; k < r.trace.records.size(); ++k)
      worst_rise = std::max(worst_rise, r.trace.records[k].f - r.trace.records[k - 1].f);
    const CQChannel init = random_channel(in.dim_t, in.state.size_x(), in.classical, cfg.seed);
    for (const CQChannel* c : {&init, &r.channel})
      worst_proj = std::max(worst_proj, projector_mismatch(in.state, *c, cfg.beta));
  }
  return {flagged == 0 && worst_rise <= kMonotonicityTol && worst_proj <= 1e-9,
          "100 runs, beta in {1, 5, 20}: flagged " + std::to_string(flagged) + ", max f_DIB rise " +
              num(worst_rise) + " (tol 1e-9), projector mismatch " + num(worst_proj) + " (tol 1e-9)"};
}

Verdict small_beta() {
  Rng rng(derive_seed(1, "acceptance", 7));
  double worst = 0.0;
  int not_converged = 0;
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(rng, 2, 6, 2, 3, 2, 3, i % 2 == 1, i % 3 == 0);
    ObjectiveConfig cfg;
    cfg.alpha = 1.0;
    cfg.beta = 0.1;
    cfg.dim_t = in.dim_t;
    cfg.classical = in.classical;
    cfg.seed = static_cast<std::uint64_t>(i);
    const RunResult r = run_qib(in.state, cfg);
    not_converged += r.trace.status != RunStatus::kConverged;
    worst = std::max({worst, mutual_info_TX(in.state, r.channel), mutual_info_TY(in.state, r.channel)});
  }
  return {worst < 1e-3 && not_converged == 0,
          "50 runs at alpha = 1, beta = 0.1: max(I(T:X), I(T:Y)) = " + num(worst) +
              " (tol 1e-3), not converged " + std::to_string(not_converged)};
}

Verdict sufficient_statistics() {
  int beat = 0, info_ok = 0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SuffStatsSpec spec = SuffStatsSpec::from_seed(seed);
    ObjectiveConfig cfg = default_suffstats_config(spec);
    cfg.seed = derive_seed(seed, "init", 0);
    const SuffStatsResult r = suffstats_pipeline(spec, cfg);
    beat += r.updates_to_beat_baseline >= 0 && r.updates_to_beat_baseline <= 10;
    const double ratio = r.run.trace.records.back().i_ty / r.baseline.i_x1y;
    info_ok += ratio >= 0.95;
    worst_ratio = std::min(worst_ratio, ratio);
  }
  return {beat >= 9 && info_ok == 10,
          "beats the discard-X2 baseline within 10 updates on " + std::to_string(beat) +
              "/10 seeds (need 9); min I(T:Y) / I(X1:Y) = " + num(worst_ratio) + " (need 0.95)"};
}

Verdict classification() {
  double mean_q = 0.0, mean_c = 0.0;
  int quantum_lower = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ClassifyConfig cfg;
    cfg.objective.seed = seed;
    const ClassifyResult r = classify_pipeline(cfg);
    mean_q += r.acc_quantum / 10;
    mean_c += r.acc_classical / 10;
    quantum_lower += r.f_quantum < r.f_classical;
  }
  return {mean_q >= 0.80 && mean_c <= 0.70 && quantum_lower == 10,
          "mean test accuracy quantum T " + num(mean_q) + " (need >= 0.80), classical T " +
              num(mean_c) + " (need <= 0.70); quantum f below classical f on " +
              std::to_string(quantum_lower) + "/10 seeds"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "qib_acceptance";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string small = R"("state": {"generator": "random_qubit_ensemble", "sizeX": 12})";
  const std::string qib_cfg = write("qib.json", "{" + small + R"(, "beta": 6, "dimT": 3, "gamma": 0.7})");
  const std::string qdib_cfg = write("qdib.json", "{" + small + R"(, "beta": 6, "dimT": 3})");
  const std::string gamma_cfg =
      write("gamma.json", "{" + small + R"(, "dimT": 4, "gammas": [1, 0.5, 0.3], "max_iters": 100})");
  const std::string beta_cfg =
      write("beta.json", "{" + small + R"(, "dimT": 2, "betas": [0.1, 2, 8], "kappa_samples": 20})");
  const std::string state_file = dir / "state.json";

  struct Invocation {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> outputs;
  };
  auto out = [&](const std::string& n) { return (dir / n).string(); };
  const std::vector<Invocation> calls = {
      {"run-qib", {"run-qib", "--config", qib_cfg, "--seed", "5"}, {"run-qib.csv"}},
      {"run-qdib", {"run-qdib", "--config", qdib_cfg, "--seed", "5"}, {"run-qdib.csv"}},
      {"gamma-sweep", {"gamma-sweep", "--config", gamma_cfg, "--seed", "5", "--jobs", "2"}, {"gamma-sweep.csv"}},
      {"beta-sweep", {"beta-sweep", "--config", beta_cfg, "--seed", "5", "--jobs", "2"}, {"beta-sweep.csv"}},
      {"advantage", {"advantage"}, {"advantage.csv"}},
      {"classify", {"classify", "--seed", "5", "--format", "csv"}, {"classify.csv"}},
      {"suffstats", {"suffstats", "--seed", "5"}, {"suffstats.csv", "suffstats_info.csv"}},
      {"validate", {"validate", "--state", state_file}, {"validate.csv"}},
  };
  {
    std::ostringstream sink;
    const char* argv[] = {"qib", "run-qib", "--config", qib_cfg.c_str(), "--seed", "5", "--emit-state",
                          state_file.c_str(), "--out", "/dev/null"};
    cli::run(10, argv, sink, sink);
  }
  std::vector<std::string> differing;
  for (const Invocation& c : calls) {
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> args{"qib"};
      args.insert(args.end(), c.args.begin(), c.args.end());
      args.push_back("--out");
      args.push_back(out(c.outputs[0]));
      std::vector<const char*> argv;
      for (const std::string& a : args) argv.push_back(a.c_str());
      std::ostringstream so, se;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), so, se);
      std::vector<std::string> contents;
      for (const std::string& o : c.outputs) contents.push_back(slurp(out(o)));
      if (code != 0 || contents[0].empty()) {
        differing.push_back(c.name + " (exit " + std::to_string(code) + ")");
        break;
      }
      if (rep == 0) {
        first = contents;
        for (const std::string& o : c.outputs) fs::remove(out(o));
      } else if (contents != first) {
        differing.push_back(c.name);
      }
    }
  }
  std::string detail = "8 subcommands invoked twice with fixed config and seed: ";
  if (differing.empty()) {
    detail += "all outputs byte-identical";
  } else {
    for (const std::string& d : differing) detail += d + " ";
    detail += "differ";
  }
  return {differing.empty(), detail};
}

}  // namespace

int main() {
  // Warnings (e.g. unseen classifier cells) are expected and not part of the report.
  set_warning_sink([](std::string_view) {});
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 means no runtime bound
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "trace identity", 10.0, trace_identity},
      {2, "gamma-ratio bound", 0.0, gamma_ratio_bound},
      {3, "monotone convergence with gamma = alpha", 0.0, monotone_convergence},
      {4, "conditional monotonicity", 0.0, conditional_monotonicity},
      {5, "quantum advantage", 60.0, quantum_advantage},
      {6, "QDIB monotonicity", 0.0, qdib_monotonicity},
      {7, "small-beta triviality", 0.0, small_beta},
      {8, "sufficient statistics", 300.0, sufficient_statistics},
      {9, "classification", 600.0, classification},
      {10, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = num(secs) + " s";
    if (c.limit_s > 0.0) {
      timing += " (limit " + num(c.limit_s) + " s)";
      if (secs > c.limit_s) v.pass = false;
    }
    failures += !v.pass;
    std::printf("%s criterion %d %s: %s; %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
