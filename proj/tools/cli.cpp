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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qib/analytic.hpp"
#include "qib/error.hpp"
#include "qib/experiments.hpp"
#include "qib/io.hpp"
#include "qib/qdib_engine.hpp"
#include "qib/qib_engine.hpp"
#include "qib/random.hpp"

namespace qib::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string out;
  std::string emit_state;
  std::string format;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

[[noreturn]] void bad(const std::string& pointer, const std::string& what) {
  throw ValidationError(pointer + ": " + what);
}

// Typed access to the top-level config object. Every key must be read by
// the subcommand; leftovers are reported as unknown.
class Config {
 public:
  Config(Json root, fs::path base) : root_(std::move(root)), base_(std::move(base)) {
    if (!root_.is_object()) bad("/", "configuration must be a JSON object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return root_.contains(key);
  }

  const Json& raw(const std::string& key) {
    used_.insert(key);
    return root_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_number()) bad("/" + key, "expected a number");
    return j.get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key) || root_[key].is_null()) return std::nullopt;
    return number(key, 0.0);
  }

  long long integer(const std::string& key, long long fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_number_integer()) bad("/" + key, "expected an integer");
    return j.get<long long>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
      bad("/" + key, "expected a non-negative integer");
    return j.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_boolean()) bad("/" + key, "expected a boolean");
    return j.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_string()) bad("/" + key, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const Json& j = root_[key];
    if (!j.is_array() || j.empty()) bad("/" + key, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) bad("/" + key + "/" + std::to_string(i), "expected a number");
      out.push_back(j[i].get<double>());
    }
    return out;
  }

  fs::path path(const std::string& relative) const {
    const fs::path p(relative);
    return p.is_absolute() ? p : base_ / p;
  }

  void reject_unknown() const {
    for (auto it = root_.begin(); it != root_.end(); ++it)
      if (!used_.count(it.key())) bad("/" + it.key(), "unknown key");
  }

 private:
  Json root_;
  fs::path base_;
  std::set<std::string> used_;
};

Config load_config(const Flags& flags) {
  if (flags.config.empty()) return Config(Json::object(), fs::current_path());
  const fs::path p(flags.config);
  return Config(io::read_json_file(flags.config), p.has_parent_path() ? p.parent_path() : fs::path("."));
}

int checked_int(Config& c, const std::string& key, int fallback, int min) {
  const long long v = c.integer(key, fallback);
  if (v < min || v > 1'000'000'000) bad("/" + key, "must be an integer >= " + std::to_string(min));
  return static_cast<int>(v);
}

double checked_number(Config& c, const std::string& key, double fallback, double min, bool strict) {
  const double v = c.number(key, fallback);
  if (!std::isfinite(v) || (strict ? !(v > min) : !(v >= min)))
    bad("/" + key, std::string("must be ") + (strict ? "> " : ">= ") + io::format_double(min));
  return v;
}

struct ObjectiveDefaults {
  double alpha = 1.0;
  double beta = 1.0;
  int dim_t = 2;
  bool classical = false;
  double tol = 1e-8;
  int max_iters = 500;
};

ObjectiveConfig read_objective(Config& c, const Flags& flags, const ObjectiveDefaults& d,
                               bool with_alpha_gamma = true) {
  ObjectiveConfig o;
  if (with_alpha_gamma) {
    o.alpha = checked_number(c, "alpha", d.alpha, 0.0, false);
    if (auto g = c.optional_number("gamma")) {
      if (!(*g > 0.0)) bad("/gamma", "must be > 0");
      o.gamma = *g;
    }
  } else {
    o.alpha = 0.0;
  }
  o.beta = checked_number(c, "beta", d.beta, 0.0, false);
  o.dim_t = checked_int(c, "dimT", d.dim_t, 1);
  o.classical = c.boolean("classical", d.classical);
  o.tol = checked_number(c, "tol", d.tol, 0.0, true);
  o.max_iters = checked_int(c, "max_iters", d.max_iters, 1);
  o.seed = c.unsigned_integer("seed", 0);
  if (flags.seed) o.seed = *flags.seed;
  return o;
}

CQState generated_state(const Json& spec, const std::string& pointer, std::uint64_t run_seed) {
  const std::string kind = spec.at("generator").get<std::string>();
  auto get_int = [&](const char* key, int fallback) {
    if (!spec.contains(key)) return fallback;
    const Json& j = spec[key];
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 1'000'000)
      bad(pointer + "/" + key, "expected a positive integer");
    return j.get<int>();
  };
  auto get_seed = [&]() -> std::uint64_t {
    if (!spec.contains("seed")) return run_seed;
    const Json& j = spec["seed"];
    if (!j.is_number_unsigned()) bad(pointer + "/seed", "expected a non-negative integer");
    return j.get<std::uint64_t>();
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (auto it = spec.begin(); it != spec.end(); ++it) {
      bool ok = it.key() == "generator";
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) bad(pointer + "/" + it.key(), "unknown key");
    }
  };
  if (kind == "random_qubit_ensemble") {
    allow({"sizeX", "seed"});
    return gen_random_qubit_ensemble(get_int("sizeX", 256), get_seed());
  }
  if (kind == "copy") {
    allow({"d", "k"});
    return copy_state(get_int("d", 3), get_int("k", 1));
  }
  if (kind == "suffstats") {
    allow({"sizeX1", "sizeX2", "nu", "seed"});
    SuffStatsSpec s = SuffStatsSpec::from_seed(get_seed());
    s.size_x1 = get_int("sizeX1", s.size_x1);
    s.size_x2 = get_int("sizeX2", s.size_x2);
    if (spec.contains("nu")) {
      if (!spec["nu"].is_number() || !(spec["nu"].get<double>() > 0.0))
        bad(pointer + "/nu", "expected a positive number");
      s.nu = spec["nu"].get<double>();
    }
    return gen_suffstats_ensemble(s).state;
  }
  bad(pointer + "/generator", "unknown generator '" + kind +
                                  "' (expected random_qubit_ensemble, copy or suffstats)");
}

CQState read_state(Config& c, const std::string& key, std::uint64_t run_seed,
                   const std::optional<Json>& fallback = std::nullopt) {
  const std::string pointer = "/" + key;
  Json spec;
  if (c.has(key)) {
    spec = c.raw(key);
  } else if (fallback) {
    spec = *fallback;
  } else {
    bad(pointer, "missing field");
  }
  if (spec.is_string()) {
    const fs::path p = c.path(spec.get<std::string>());
    const Json j = io::read_json_file(p.string());
    try {
      return io::state_from_json(j, "");
    } catch (const ValidationError& e) {
      throw ValidationError(p.string() + ": " + e.what());
    }
  }
  if (spec.is_object() && spec.contains("generator")) {
    if (!spec["generator"].is_string()) bad(pointer + "/generator", "expected a string");
    return generated_state(spec, pointer, run_seed);
  }
  return io::state_from_json(spec, pointer);
}

void emit(const Flags& flags, std::ostream& out, const std::string& content) {
  if (flags.out.empty()) {
    out << content;
  } else {
    io::write_file_atomic(flags.out, content);
  }
}

void emit_state(const Flags& flags, const CQState& state) {
  if (!flags.emit_state.empty())
    io::write_file_atomic(flags.emit_state, io::state_to_json(state).dump(2) + "\n");
}

bool json_format(const Flags& flags, bool default_json = false) {
  if (flags.format.empty()) return default_json;
  return flags.format == "json";
}

CQChannel initial_channel(Config& c, const ObjectiveConfig& o, const CQState& state) {
  const std::string init = c.string("init", "random");
  if (init == "random") return random_channel(o.dim_t, state.size_x(), o.classical, o.seed);
  if (init == "maximally_mixed")
    return CQChannel::constant(DensityOperator::maximally_mixed(o.dim_t), state.size_x(), o.classical);
  bad("/init", "expected \"random\" or \"maximally_mixed\"");
}

std::string trace_output(const IterationTrace& trace, const CQChannel& channel, const CQState& state,
                         bool as_json) {
  if (!as_json) {
    std::ostringstream os;
    io::write_trace_csv(os, trace);
    return os.str();
  }
  Json j = io::trace_to_json(trace);
  j["channel"] = io::channel_to_json(channel);
  j["I_XY"] = holevo_information(state);
  return j.dump(2) + "\n";
}

// ---- subcommands ---------------------------------------------------------

int cmd_run_qib(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  const ObjectiveConfig o = read_objective(c, flags, {});
  const CQState state = read_state(c, "state", o.seed);
  const CQChannel init = initial_channel(c, o, state);
  c.reject_unknown();
  emit_state(flags, state);
  const RunResult r = run_qib(state, o, init);
  emit(flags, out, trace_output(r.trace, r.channel, state, json_format(flags)));
  return 0;
}

int cmd_run_qdib(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  const ObjectiveConfig o = read_objective(c, flags, {}, false);
  const CQState state = read_state(c, "state", o.seed);
  const CQChannel init = initial_channel(c, o, state);
  const std::string pol = c.string("on_vanishing_overlap", "fallback");
  if (pol != "fallback" && pol != "error")
    bad("/on_vanishing_overlap", "expected \"fallback\" or \"error\"");
  c.reject_unknown();
  emit_state(flags, state);
  const RunResult r = run_qdib(state, o, init,
                               pol == "error" ? OverlapPolicy::kThrow
                                              : OverlapPolicy::kFallbackToProjector);
  emit(flags, out, trace_output(r.trace, r.channel, state, json_format(flags)));
  return 0;
}

int cmd_gamma_sweep(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  ObjectiveDefaults d;
  d.beta = 10.0;
  d.dim_t = 16;
  d.classical = true;
  const ObjectiveConfig o = read_objective(c, flags, d);
  const std::vector<double> gammas = c.numbers("gammas", {1.0, 0.8, 0.55, 0.5, 0.45, 0.4});
  for (std::size_t i = 0; i < gammas.size(); ++i)
    if (!(gammas[i] > 0.0)) bad("/gammas/" + std::to_string(i), "must be > 0");
  const CQState state = read_state(c, "state", o.seed,
                                   Json{{"generator", "random_qubit_ensemble"}, {"sizeX", 256}});
  c.reject_unknown();
  emit_state(flags, state);
  const auto runs = gamma_sweep(state, o, gammas, flags.jobs);

  if (json_format(flags)) {
    Json arr = Json::array();
    for (const GammaRun& g : runs) {
      Json j = io::trace_to_json(g.result.trace);
      j["gamma"] = g.gamma;
      arr.push_back(std::move(j));
    }
    emit(flags, out, arr.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  std::vector<std::string> header{"gamma"};
  for (auto& h : io::trace_header(false)) header.push_back(h);
  os << io::csv_row(header) << '\n';
  for (const GammaRun& g : runs) {
    for (const IterationRecord& r : g.result.trace.records) {
      std::vector<std::string> f{io::format_double(g.gamma)};
      for (auto& v : io::trace_fields(r, false)) f.push_back(v);
      os << io::csv_row(f) << '\n';
    }
  }
  for (const GammaRun& g : runs)
    os << "# gamma=" << io::format_double(g.gamma)
       << " status=" << to_string(g.result.trace.status) << '\n';
  emit(flags, out, os.str());
  return 0;
}

int cmd_beta_sweep(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  const ObjectiveConfig o = read_objective(c, flags, {});
  const std::vector<double> betas = c.numbers("betas", {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0});
  for (std::size_t i = 0; i < betas.size(); ++i)
    if (!(betas[i] >= 0.0)) bad("/betas/" + std::to_string(i), "must be >= 0");
  const int samples = checked_int(c, "kappa_samples", 200, 1);
  const CQState state = read_state(c, "state", o.seed,
                                   Json{{"generator", "random_qubit_ensemble"}, {"sizeX", 8}});
  c.reject_unknown();
  emit_state(flags, state);
  const auto rows = beta_sweep(state, o, betas, samples, flags.jobs);

  if (json_format(flags)) {
    Json arr = Json::array();
    for (const BetaRow& r : rows)
      arr.push_back({{"beta", r.beta}, {"f", r.f}, {"H_T", r.h_t}, {"I_TX", r.i_tx},
                     {"I_TY", r.i_ty}, {"kappa_lower_bound", r.kappa_lower_bound},
                     {"status", to_string(r.status)}});
    emit(flags, out, arr.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "beta,f,H_T,I_TX,I_TY,kappa_lower_bound\n";
  for (const BetaRow& r : rows)
    os << io::csv_row({io::format_double(r.beta), io::format_double(r.f), io::format_double(r.h_t),
                       io::format_double(r.i_tx), io::format_double(r.i_ty),
                       io::format_double(r.kappa_lower_bound)})
       << '\n';
  for (const BetaRow& r : rows)
    os << "# beta=" << io::format_double(r.beta) << " status=" << to_string(r.status) << '\n';
  emit(flags, out, os.str());
  return 0;
}

struct AdvantageFlags {
  std::optional<int> d;
  std::optional<int> n;
  std::optional<double> alpha;
  std::optional<double> beta;
};

int cmd_advantage(const Flags& flags, const AdvantageFlags& af, std::ostream& out) {
  Config c = load_config(flags);
  double alpha = c.number("alpha", 1.0);
  double beta = c.number("beta", 2.0);
  std::vector<std::pair<int, int>> cases;
  if (c.has("cases")) {
    const Json& arr = c.raw("cases");
    if (!arr.is_array() || arr.empty()) bad("/cases", "expected a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "/cases/" + std::to_string(i);
      const Json& e = arr[i];
      if (!e.is_object()) bad(p, "expected an object with d and n");
      for (auto it = e.begin(); it != e.end(); ++it)
        if (it.key() != "d" && it.key() != "n") bad(p + "/" + it.key(), "unknown key");
      for (const char* k : {"d", "n"})
        if (!e.contains(k) || !e[k].is_number_integer()) bad(p + "/" + k, "expected an integer");
      cases.emplace_back(e["d"].get<int>(), e["n"].get<int>());
    }
  } else {
    cases = {{3, 2}, {5, 2}, {5, 3}, {7, 4}};
  }
  c.reject_unknown();
  if (af.alpha) alpha = *af.alpha;
  if (af.beta) beta = *af.beta;
  if (af.d || af.n) {
    if (!af.d || !af.n) bad("/", "--d and --n must be given together");
    cases = {{*af.d, *af.n}};
  }

  std::vector<AdvantageReport> reports;
  for (const auto& [d, n] : cases) reports.push_back(advantage_gap(d, n, alpha, beta));

  if (json_format(flags)) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < cases.size(); ++i)
      arr.push_back({{"d", cases[i].first}, {"n", cases[i].second}, {"beta", beta},
                     {"quantum", reports[i].quantum}, {"classical", reports[i].classical},
                     {"gap", reports[i].gap}, {"achieved_quantum", reports[i].achieved_quantum}});
    emit(flags, out, arr.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "d,n,beta,quantum,classical,gap\n";
  for (std::size_t i = 0; i < cases.size(); ++i)
    os << io::csv_row({std::to_string(cases[i].first), std::to_string(cases[i].second),
                       io::format_double(beta), io::format_double(reports[i].quantum),
                       io::format_double(reports[i].classical), io::format_double(reports[i].gap)})
       << '\n';
  emit(flags, out, os.str());
  return 0;
}

int cmd_classify(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  ObjectiveDefaults d;
  d.beta = 15.0;
  d.max_iters = 2000;
  ClassifyConfig cc;
  cc.objective = read_objective(c, flags, d);
  cc.ridge = checked_number(c, "ridge", 1e-3, 0.0, true);
  const std::string grid_out = c.string("grid_out", "");
  c.reject_unknown();
  const ClassifyResult r = classify_pipeline(cc);
  emit_state(flags, r.train_state.state);

  if (!grid_out.empty()) {
    std::ostringstream g;
    g << "x1,x2,pred_quantum,pred_classical,pred_linear\n";
    for (const GridPrediction& p : r.grid)
      g << p.x1 << ',' << p.x2 << ',' << p.quantum << ',' << p.classical << ',' << p.linear << '\n';
    io::write_file_atomic(c.path(grid_out).string(), g.str());
  }
  if (json_format(flags, true)) {
    const Json j{{"f_quantum", r.f_quantum},
                 {"f_classical", r.f_classical},
                 {"acc_quantum", r.acc_quantum},
                 {"acc_classical", r.acc_classical},
                 {"acc_linear_ref", r.acc_linear_ref}};
    emit(flags, out, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "f_quantum,f_classical,acc_quantum,acc_classical,acc_linear_ref\n"
     << io::csv_row({io::format_double(r.f_quantum), io::format_double(r.f_classical),
                     io::format_double(r.acc_quantum), io::format_double(r.acc_classical),
                     io::format_double(r.acc_linear_ref)})
     << '\n';
  emit(flags, out, os.str());
  return 0;
}

std::string info_path(const std::string& out) {
  fs::path p(out);
  const std::string ext = p.has_extension() ? p.extension().string() : std::string(".csv");
  p.replace_extension();
  return p.string() + "_info" + ext;
}

int cmd_suffstats(const Flags& flags, std::ostream& out) {
  Config c = load_config(flags);
  const std::uint64_t seed = flags.seed ? *flags.seed : c.unsigned_integer("seed", 0);
  SuffStatsSpec spec = SuffStatsSpec::from_seed(seed);
  spec.size_x1 = checked_int(c, "sizeX1", spec.size_x1, 1);
  spec.size_x2 = checked_int(c, "sizeX2", spec.size_x2, 1);
  spec.nu = checked_number(c, "nu", spec.nu, 0.0, true);
  ObjectiveConfig o = default_suffstats_config(spec);
  o.beta = checked_number(c, "beta", o.beta, 0.0, false);
  o.dim_t = checked_int(c, "dimT", o.dim_t, 1);
  o.tol = checked_number(c, "tol", o.tol, 0.0, true);
  o.max_iters = checked_int(c, "max_iters", o.max_iters, 1);
  o.seed = derive_seed(seed, "init", 0);
  c.reject_unknown();

  const SuffStatsResult r = suffstats_pipeline(spec, o);
  emit_state(flags, r.ensemble.state);

  std::ostringstream f, info;
  f << "iter,f_dib_qdib,f_dib_baseline\n";
  info << "iter,I_TY,I_X1Y_baseline,I_XY\n";
  for (const IterationRecord& rec : r.run.trace.records) {
    f << io::csv_row({std::to_string(rec.iter), io::format_double(rec.f),
                      io::format_double(r.baseline.f_dib)})
      << '\n';
    info << io::csv_row({std::to_string(rec.iter), io::format_double(rec.i_ty),
                         io::format_double(r.baseline.i_x1y), io::format_double(r.i_xy)})
         << '\n';
  }
  const std::string status = "# status=" + to_string(r.run.trace.status) + "\n";
  f << status;
  info << status;

  if (json_format(flags)) {
    const Json j{{"f_dib_final", r.run.trace.records.back().f},
                 {"f_dib_baseline", r.baseline.f_dib},
                 {"I_TY", r.run.trace.records.back().i_ty},
                 {"I_X1Y_baseline", r.baseline.i_x1y},
                 {"I_XY", r.i_xy},
                 {"epsilon", r.epsilon},
                 {"support_T", r.support_t},
                 {"updates_to_beat_baseline", r.updates_to_beat_baseline},
                 {"status", to_string(r.run.trace.status)}};
    emit(flags, out, j.dump(2) + "\n");
    return 0;
  }
  if (flags.out.empty()) {
    out << f.str() << '\n' << info.str();
  } else {
    io::write_file_atomic(flags.out, f.str());
    io::write_file_atomic(info_path(flags.out), info.str());
  }
  return 0;
}

int cmd_validate(const Flags& flags, const std::string& state_path,
                 const std::string& channel_path, std::ostream& out) {
  Config c = load_config(flags);
  std::optional<CQState> state;
  std::optional<CQChannel> channel;
  if (!state_path.empty()) {
    const Json j = io::read_json_file(state_path);
    try {
      state = io::state_from_json(j, "");
    } catch (const ValidationError& e) {
      throw ValidationError(state_path + ": " + e.what());
    }
  } else if (c.has("state")) {
    state = read_state(c, "state", flags.seed.value_or(0));
  }
  auto load_channel = [&](const Json& j, const std::string& where) {
    try {
      channel = io::channel_from_json(j, where == "config" ? "/channel" : "");
    } catch (const ValidationError& e) {
      if (where == "config") throw;
      throw ValidationError(where + ": " + e.what());
    }
  };
  if (!channel_path.empty()) {
    load_channel(io::read_json_file(channel_path), channel_path);
  } else if (c.has("channel")) {
    const Json& j = c.raw("channel");
    if (j.is_string()) {
      const std::string p = c.path(j.get<std::string>()).string();
      load_channel(io::read_json_file(p), p);
    } else {
      load_channel(j, "config");
    }
  }
  c.reject_unknown();
  if (!state && !channel) bad("/", "nothing to validate; pass --state, --channel or a config");
  if (state && channel) check_compatible(*state, *channel);
  if (state) emit_state(flags, *state);

  std::ostringstream os;
  os << "ok";
  if (state) os << " state |X|=" << state->size_x() << " dimY=" << state->dim_y();
  if (channel)
    os << " channel |X|=" << channel->size_x() << " dimT=" << channel->dim_t()
       << (channel->classical() ? " classical" : "");
  os << '\n';
  emit(flags, out, os.str());
  return 0;
}

void add_common(CLI::App* sub, Flags& flags, bool jobs) {
  sub->add_option("--config", flags.config, "JSON configuration file");
  sub->add_option("--out", flags.out, "Output file (default: standard output)");
  sub->add_option("--seed", flags.seed, "Seed; overrides the configuration");
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--emit-state", flags.emit_state, "Write the state used to this JSON file");
  if (jobs) sub->add_option("--jobs", flags.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum information bottleneck toolkit", "qib"};
  app.require_subcommand(1);
  Flags flags;
  AdvantageFlags af;
  std::string state_path, channel_path;

  std::map<std::string, std::function<int()>> handlers;
  auto add = [&](const std::string& name, const std::string& desc, bool jobs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, flags, jobs);
    return sub;
  };
  add("run-qib", "Run the accelerated QIB iteration and print its trace", false);
  handlers["run-qib"] = [&] { return cmd_run_qib(flags, out); };
  add("run-qdib", "Run the deterministic (projector) iteration and print its trace", false);
  handlers["run-qdib"] = [&] { return cmd_run_qdib(flags, out); };
  add("gamma-sweep", "Run one QIB trace per acceleration parameter", true);
  handlers["gamma-sweep"] = [&] { return cmd_gamma_sweep(flags, out); };
  add("beta-sweep", "Converged metrics per beta with a kappa lower bound", true);
  handlers["beta-sweep"] = [&] { return cmd_beta_sweep(flags, out); };
  CLI::App* adv = add("advantage", "Quantum versus classical memory bounds", false);
  adv->add_option("--d", af.d, "Number of classical symbols");
  adv->add_option("--n", af.n, "Memory dimension");
  adv->add_option("--alpha", af.alpha, "alpha");
  adv->add_option("--beta", af.beta, "beta");
  handlers["advantage"] = [&] { return cmd_advantage(flags, af, out); };
  add("classify", "Kernel classification with learned quantum and classical feature maps", false);
  handlers["classify"] = [&] { return cmd_classify(flags, out); };
  add("suffstats", "Sufficient statistics extraction with QDIB", false);
  handlers["suffstats"] = [&] { return cmd_suffstats(flags, out); };
  CLI::App* val = add("validate", "Check state and channel files against their invariants", false);
  val->add_option("--state", state_path, "State JSON file");
  val->add_option("--channel", channel_path, "Channel JSON file");
  handlers["validate"] = [&] { return cmd_validate(flags, state_path, channel_path, out); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const auto& [name, fn] : handlers)
      if (app.got_subcommand(name)) return fn();
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qib::cli
