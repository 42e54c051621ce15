// Copyright 2026 The Thermalizer Authors
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

#include "thermalizer/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>

#include "json.hpp"
#include "thermalizer/channels.hpp"
#include "thermalizer/entropy.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"
#include "thermalizer/parallel.hpp"
#include "thermalizer/symmetry.hpp"

namespace thermalizer {

using json = nlohmann::json;

namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_table() {
  static const std::vector<std::pair<Experiment, std::string>> t = {
      {Experiment::Gibbs, "gibbs"},
      {Experiment::Train, "train"},
      {Experiment::SweepBeta, "sweep-beta"},
      {Experiment::EntropyBench, "entropy-bench"},
      {Experiment::GradVariance, "grad-variance"},
      {Experiment::DepthStudy, "depth-study"},
      {Experiment::SymmetryCheck, "symmetry-check"},
      {Experiment::QoftBench, "qoft-bench"},
  };
  return t;
}

// ---- schema helpers ----

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError((path.empty() ? std::string("config") : path) + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(join_path(path, key), "unknown key \"" + key + "\"");
  }
}

double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

long long read_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

int read_int_in(const json& j, const std::string& path, long long lo, long long hi) {
  const long long v = read_integer(j, path);
  if (v < lo || v > hi) fail(path, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

template <class F>
void if_present(const json& obj, const std::string& path, const char* key, F&& f) {
  if (auto it = obj.find(key); it != obj.end()) f(*it, join_path(path, key));
}

std::vector<int> read_int_list(const json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_int_in(j[i], path + "[" + std::to_string(i) + "]", lo, hi));
  return out;
}

void check_pattern(const std::string& pattern, const std::string& path) {
  if (pattern.empty() || pattern.find_first_not_of("IXYZ") != std::string::npos) {
    fail(path, "Pauli pattern must be a nonempty string over I, X, Y, Z");
  }
}

GeneratorTemplate generator_preset(const std::string& name, const SpinModel& model, const std::string& path) {
  if (name == "mixing") return mixing_generator();
  if (name == "coupling") return coupling_generator();
  if (name == "longitudinal") return longitudinal_generator();
  if (name == "ising_problem") return ising_problem_generator(model.J, model.g);
  if (name == "heisenberg_problem") return heisenberg_problem_generator(model.heisenberg_plus ? 1.0 : -1.0);
  fail(path, "unknown generator preset \"" + name + "\"");
}

GeneratorTemplate read_generator(const json& j, const std::string& path, const SpinModel& model) {
  if (j.is_string()) return generator_preset(j.get<std::string>(), model, path);
  check_keys(j, path, {"name", "terms", "per_site"});
  if (!j.contains("name")) fail(path, "missing \"name\"");
  const std::string name = read_string(j["name"], join_path(path, "name"));
  GeneratorTemplate g;
  if (j.contains("terms")) {
    g.name = name;
    const json& terms = j["terms"];
    const std::string tp = join_path(path, "terms");
    if (!terms.is_array() || terms.empty()) fail(tp, "expected a nonempty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string ip = tp + "[" + std::to_string(i) + "]";
      check_keys(terms[i], ip, {"pattern", "coeff"});
      if (!terms[i].contains("pattern")) fail(ip, "missing \"pattern\"");
      const std::string pattern = read_string(terms[i]["pattern"], join_path(ip, "pattern"));
      check_pattern(pattern, join_path(ip, "pattern"));
      if (static_cast<int>(pattern.size()) > model.n) fail(join_path(ip, "pattern"), "longer than the register");
      const double c = terms[i].contains("coeff") ? read_real(terms[i]["coeff"], join_path(ip, "coeff")) : 1.0;
      g.terms.emplace_back(pattern, c);
    }
  } else {
    g = generator_preset(name, model, join_path(path, "name"));
  }
  if_present(j, path, "per_site", [&](const json& v, const std::string& p) { g.per_site = read_bool(v, p); });
  return g;
}

ChannelFamily family_from(const std::string& name, const std::string& path) {
  try {
    return parse_channel_family(name);
  } catch (const std::exception&) {
    fail(path, "unknown channel family \"" + name + "\"");
  }
}

// Hard limits a bound may not cross for the channel to stay physical.
ParameterBounds physical_limits(ChannelFamily f, int k) {
  switch (f) {
    case ChannelFamily::TfimJump:
      return k == 0 ? ParameterBounds{0.0, 1e6} : ParameterBounds{-1e6, 1e6};
    case ChannelFamily::HeisenbergPair:
      return {0.0, 1e6};
    default:
      return {0.0, 1.0};
  }
}

ChannelTemplate read_channel(const json& j, const std::string& path) {
  ChannelTemplate c;
  if (j.is_string()) {
    c.family = family_from(j.get<std::string>(), path);
    return c;
  }
  check_keys(j, path, {"family", "bounds", "per_site", "hadamard_frame", "time"});
  if (!j.contains("family")) fail(path, "missing \"family\"");
  c.family = family_from(read_string(j["family"], join_path(path, "family")), join_path(path, "family"));
  if_present(j, path, "per_site", [&](const json& v, const std::string& p) { c.per_site = read_bool(v, p); });
  if_present(j, path, "hadamard_frame", [&](const json& v, const std::string& p) {
    c.hadamard_frame = read_bool(v, p);
    if (c.hadamard_frame && c.family != ChannelFamily::TfimJump) fail(p, "only valid for tfim_jump");
  });
  if_present(j, path, "time", [&](const json& v, const std::string& p) {
    c.time = read_real(v, p);
    if (!(c.time > 0)) fail(p, "must be positive");
  });
  if_present(j, path, "bounds", [&](const json& v, const std::string& p) {
    const int want = channel_family_parameters(c.family);
    if (!v.is_array() || static_cast<int>(v.size()) != want) {
      fail(p, "expected " + std::to_string(want) + " [lower, upper] pairs");
    }
    for (int k = 0; k < want; ++k) {
      const std::string bp = p + "[" + std::to_string(k) + "]";
      const json& b = v[static_cast<std::size_t>(k)];
      if (!b.is_array() || b.size() != 2) fail(bp, "expected [lower, upper]");
      ParameterBounds pb{read_real(b[0], bp + "[0]"), read_real(b[1], bp + "[1]")};
      const ParameterBounds lim = physical_limits(c.family, k);
      if (pb.lower > pb.upper) fail(bp, "lower exceeds upper");
      if (pb.lower < lim.lower || pb.upper > lim.upper) fail(bp, "outside the physical range of the family");
      c.bounds.push_back(pb);
    }
  });
  return c;
}

ChannelTemplate channel_of(ChannelFamily f) {
  ChannelTemplate c;
  c.family = f;
  return c;
}

AnsatzSpec default_ansatz(const SpinModel& model) {
  AnsatzSpec s;
  s.n = model.n;
  s.m = 2;
  switch (model.kind) {
    case ModelKind::Ising:
      s.generators = {ising_problem_generator(model.J, model.g), mixing_generator()};
      s.channels = {channel_of(ChannelFamily::Bitflip), channel_of(ChannelFamily::IsingProjector)};
      break;
    case ModelKind::TFIM:
      s.generators = {coupling_generator(), mixing_generator()};
      s.channels = {channel_of(ChannelFamily::Phaseflip)};
      break;
    case ModelKind::Heisenberg:
      // Heisenberg layers leave |+>^n invariant; the Ising-type layers do not.
      s.generators = {coupling_generator(), mixing_generator()};
      s.channels = {channel_of(ChannelFamily::HeisenbergPair)};
      break;
  }
  return s;
}

SpinModel read_model(const json& j, const std::string& path) {
  SpinModel m;
  check_keys(j, path, {"kind", "n", "J", "g", "delta", "heisenberg_plus"});
  if_present(j, path, "kind", [&](const json& v, const std::string& p) {
    const std::string s = read_string(v, p);
    try {
      m.kind = parse_model_kind(s);
    } catch (const std::exception&) {
      fail(p, "unknown model \"" + s + "\"");
    }
  });
  // Upper limit is the resource guard's business.
  if_present(j, path, "n", [&](const json& v, const std::string& p) { m.n = read_int_in(v, p, 3, 62); });
  if_present(j, path, "J", [&](const json& v, const std::string& p) { m.J = read_real(v, p); });
  if_present(j, path, "g", [&](const json& v, const std::string& p) { m.g = read_real(v, p); });
  if_present(j, path, "delta", [&](const json& v, const std::string& p) { m.delta = read_real(v, p); });
  if_present(j, path, "heisenberg_plus", [&](const json& v, const std::string& p) { m.heisenberg_plus = read_bool(v, p); });
  return m;
}

void read_training(const json& j, const std::string& path, TrainConfig& t) {
  check_keys(j, path, {"optimizer", "restarts", "max_iters", "ftol", "window", "fd_step", "history",
                       "max_evaluations", "theta_sigma", "workers"});
  auto& o = t.optimizer;
  if_present(j, path, "optimizer", [&](const json& v, const std::string& p) {
    const std::string s = read_string(v, p);
    try {
      o.kind = parse_optimizer(s);
    } catch (const std::exception&) {
      fail(p, "unknown optimizer \"" + s + "\"");
    }
  });
  if_present(j, path, "restarts", [&](const json& v, const std::string& p) { t.restarts = read_int_in(v, p, 1, 10000); });
  if_present(j, path, "max_iters", [&](const json& v, const std::string& p) { o.max_iters = read_int_in(v, p, 1, 10000000); });
  if_present(j, path, "ftol", [&](const json& v, const std::string& p) {
    o.ftol = read_real(v, p);
    if (!(o.ftol >= 0)) fail(p, "must be >= 0");
  });
  if_present(j, path, "window", [&](const json& v, const std::string& p) { o.window = read_int_in(v, p, 1, 1000); });
  if_present(j, path, "fd_step", [&](const json& v, const std::string& p) {
    o.fd_step = read_real(v, p);
    if (!(o.fd_step > 0)) fail(p, "must be positive");
  });
  if_present(j, path, "history", [&](const json& v, const std::string& p) { o.history = read_int_in(v, p, 1, 1000); });
  if_present(j, path, "max_evaluations", [&](const json& v, const std::string& p) {
    o.max_evaluations = read_int_in(v, p, 0, 2000000000);
  });
  if_present(j, path, "theta_sigma", [&](const json& v, const std::string& p) {
    t.theta_sigma = read_real(v, p);
    if (!(t.theta_sigma >= 0)) fail(p, "must be >= 0");
  });
  if_present(j, path, "workers", [&](const json& v, const std::string& p) {
    t.workers = static_cast<unsigned>(read_int_in(v, p, 0, 1024));
  });
}

void read_cost(const json& j, const std::string& path, CostOptions& c) {
  check_keys(j, path, {"entropy_method", "regularize", "n_a", "n_b", "variational_budget"});
  if_present(j, path, "entropy_method", [&](const json& v, const std::string& p) {
    const std::string s = read_string(v, p);
    try {
      c.method = parse_entropy_method(s);
    } catch (const std::exception&) {
      fail(p, "unknown entropy method \"" + s + "\"");
    }
  });
  if_present(j, path, "regularize", [&](const json& v, const std::string& p) { c.regularize = read_bool(v, p); });
  if_present(j, path, "n_a", [&](const json& v, const std::string& p) { c.n_a = read_int_in(v, p, 1, 62); });
  if_present(j, path, "n_b", [&](const json& v, const std::string& p) { c.n_b = read_int_in(v, p, 1, 62); });
  if_present(j, path, "variational_budget", [&](const json& v, const std::string& p) {
    c.variational_budget = read_int_in(v, p, 1, 100000000);
  });
}

void read_entropy_bench(const json& j, const std::string& path, EntropyBenchConfig& e) {
  check_keys(j, path, {"n", "m", "lambda", "n_a"});
  if_present(j, path, "n", [&](const json& v, const std::string& p) { e.n = read_int_in(v, p, 3, 62); });
  if_present(j, path, "m", [&](const json& v, const std::string& p) { e.m = read_int_in(v, p, 1, 100000); });
  if_present(j, path, "lambda", [&](const json& v, const std::string& p) {
    e.lambda = read_real(v, p);
    if (e.lambda < 0 || e.lambda > 1) fail(p, "must be in [0, 1]");
  });
  if_present(j, path, "n_a", [&](const json& v, const std::string& p) { e.n_a = read_int_list(v, p, 1, 62); });
}

void read_grad_variance(const json& j, const std::string& path, GradVarianceConfig& g) {
  check_keys(j, path, {"n_range", "layers", "samples", "observable", "parameter_index", "per_site"});
  if_present(j, path, "n_range", [&](const json& v, const std::string& p) { g.n_range = read_int_list(v, p, 2, 62); });
  if_present(j, path, "layers", [&](const json& v, const std::string& p) { g.layers = read_int_in(v, p, 1, 100000); });
  if_present(j, path, "samples", [&](const json& v, const std::string& p) { g.samples = read_int_in(v, p, 2, 10000000); });
  if_present(j, path, "observable", [&](const json& v, const std::string& p) {
    g.observable = read_string(v, p);
    check_pattern(g.observable, p);
  });
  if_present(j, path, "parameter_index", [&](const json& v, const std::string& p) {
    g.parameter_index = read_int_in(v, p, 0, 100000000);
  });
  if_present(j, path, "per_site", [&](const json& v, const std::string& p) { g.per_site = read_bool(v, p); });
}

void read_depth_study(const json& j, const std::string& path, DepthStudyConfig& d) {
  check_keys(j, path, {"m_range", "families"});
  if_present(j, path, "m_range", [&](const json& v, const std::string& p) { d.m_range = read_int_list(v, p, 0, 10000); });
  if_present(j, path, "families", [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.empty()) fail(p, "expected a nonempty array");
    d.families.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string ip = p + "[" + std::to_string(i) + "]";
      const std::string s = read_string(v[i], ip);
      if (s != "symmetric" && s != "nonsymmetric") fail(ip, "expected \"symmetric\" or \"nonsymmetric\"");
      d.families.push_back(s);
    }
  });
}

void read_qoft_bench(const json& j, const std::string& path, QoftBenchConfig& q) {
  check_keys(j, path, {"pairs", "qubits", "beta_norm", "omega_min", "omega_max", "points", "odd_term",
                       "slope_beta_min", "slope_beta_max", "slope_points"});
  if_present(j, path, "pairs", [&](const json& v, const std::string& p) { q.pairs = read_int_in(v, p, 1, 100000); });
  if_present(j, path, "qubits", [&](const json& v, const std::string& p) { q.qubits = read_int_in(v, p, 1, 62); });
  if_present(j, path, "beta_norm", [&](const json& v, const std::string& p) {
    q.beta_norm = read_real(v, p);
    if (!(q.beta_norm > 0) || q.beta_norm > kMaxBetaNorm) fail(p, "must be in (0, 0.1]");
  });
  if_present(j, path, "omega_min", [&](const json& v, const std::string& p) { q.omega_min = read_real(v, p); });
  if_present(j, path, "omega_max", [&](const json& v, const std::string& p) { q.omega_max = read_real(v, p); });
  if_present(j, path, "points", [&](const json& v, const std::string& p) { q.points = read_int_in(v, p, 1, 1000000); });
  if_present(j, path, "odd_term", [&](const json& v, const std::string& p) {
    const std::string s = read_string(v, p);
    if (s == "summed") q.odd_term = OddTermForm::Summed;
    else if (s == "as_printed") q.odd_term = OddTermForm::AsPrinted;
    else fail(p, "expected \"summed\" or \"as_printed\"");
  });
  if_present(j, path, "slope_beta_min", [&](const json& v, const std::string& p) { q.slope_beta_min = read_real(v, p); });
  if_present(j, path, "slope_beta_max", [&](const json& v, const std::string& p) { q.slope_beta_max = read_real(v, p); });
  if_present(j, path, "slope_points", [&](const json& v, const std::string& p) { q.slope_points = read_int_in(v, p, 2, 10000); });
  if (q.omega_min > q.omega_max) fail(join_path(path, "omega_min"), "exceeds omega_max");
  if (!(q.slope_beta_min > 0) || !(q.slope_beta_max > q.slope_beta_min)) {
    fail(join_path(path, "slope_beta_min"), "need 0 < slope_beta_min < slope_beta_max");
  }
}

// ---- canonical form ----

json generator_json(const GeneratorTemplate& g) {
  json terms = json::array();
  for (const auto& [pattern, c] : g.terms) terms.push_back({{"pattern", pattern}, {"coeff", c}});
  return {{"name", g.name}, {"terms", terms}, {"per_site", g.per_site}};
}

json channel_json(const ChannelTemplate& c) {
  json bounds = json::array();
  for (const auto& b : c.resolved_bounds()) bounds.push_back({b.lower, b.upper});
  return {{"family", channel_family_name(c.family)},
          {"bounds", bounds},
          {"per_site", c.per_site},
          {"hadamard_frame", c.hadamard_frame},
          {"time", c.time}};
}

const char* odd_term_name(OddTermForm f) { return f == OddTermForm::Summed ? "summed" : "as_printed"; }

json config_json(const ExperimentConfig& c) {
  json gens = json::array();
  for (const auto& g : c.ansatz.generators) gens.push_back(generator_json(g));
  json chans = json::array();
  for (const auto& ch : c.ansatz.channels) chans.push_back(channel_json(ch));
  const auto& o = c.training.optimizer;
  const auto& cost = c.training.cost;
  return {
      {"experiment", experiment_name(c.experiment)},
      {"model",
       {{"kind", model_name(c.model.kind)},
        {"n", c.model.n},
        {"J", c.model.J},
        {"g", c.model.g},
        {"delta", c.model.delta},
        {"heisenberg_plus", c.model.heisenberg_plus}}},
      {"beta_grid", c.beta_grid},
      {"ansatz", {{"m", c.ansatz.m}, {"generators", gens}, {"channels", chans}}},
      {"training",
       {{"optimizer", optimizer_name(o.kind)},
        {"restarts", c.training.restarts},
        {"max_iters", o.max_iters},
        {"ftol", o.ftol},
        {"window", o.window},
        {"fd_step", o.fd_step},
        {"history", o.history},
        {"max_evaluations", o.max_evaluations},
        {"theta_sigma", c.training.theta_sigma},
        {"workers", c.training.workers}}},
      {"cost",
       {{"entropy_method", entropy_method_name(cost.method)},
        {"regularize", cost.regularize},
        {"n_a", cost.n_a},
        {"n_b", cost.n_b},
        {"variational_budget", cost.variational_budget}}},
      {"seeds", c.seeds},
      {"output_path", c.output_path},
      {"entropy_bench",
       {{"n", c.entropy_bench.n}, {"m", c.entropy_bench.m}, {"lambda", c.entropy_bench.lambda}, {"n_a", c.entropy_bench.n_a}}},
      {"grad_variance",
       {{"n_range", c.grad_variance.n_range},
        {"layers", c.grad_variance.layers},
        {"samples", c.grad_variance.samples},
        {"observable", c.grad_variance.observable},
        {"parameter_index", c.grad_variance.parameter_index},
        {"per_site", c.grad_variance.per_site}}},
      {"depth_study", {{"m_range", c.depth_study.m_range}, {"families", c.depth_study.families}}},
      {"qoft_bench",
       {{"pairs", c.qoft_bench.pairs},
        {"qubits", c.qoft_bench.qubits},
        {"beta_norm", c.qoft_bench.beta_norm},
        {"omega_min", c.qoft_bench.omega_min},
        {"omega_max", c.qoft_bench.omega_max},
        {"points", c.qoft_bench.points},
        {"odd_term", odd_term_name(c.qoft_bench.odd_term)},
        {"slope_beta_min", c.qoft_bench.slope_beta_min},
        {"slope_beta_max", c.qoft_bench.slope_beta_max},
        {"slope_points", c.qoft_bench.slope_points}}},
  };
}

// ---- formatting ----

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }

// NaN and inf are not JSON numbers.
json num(double v) { return std::isfinite(v) ? json(v) : json(fmt(v)); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// ---- experiment helpers ----

bool fidelity_ok(double f) { return f >= -1e-9 && f <= 1.0 + 1e-9; }
bool entropy_ok(double s, int n) { return s >= -1e-9 && s <= n * std::numbers::ln2 + 1e-9; }

struct WorkItem {
  std::uint64_t seed;
  double beta;
};

std::vector<WorkItem> work_items(const ExperimentConfig& c) {
  std::vector<WorkItem> items;
  for (auto s : c.seeds) {
    for (double b : c.beta_grid) items.push_back({s, b});
  }
  return items;
}

TrainConfig item_config(const ExperimentConfig& c, std::uint64_t seed, std::size_t items) {
  TrainConfig t = c.training;
  t.seed = seed;
  // Outer fan-out already occupies the pool.
  if (items > 1 && default_workers() > 1) t.workers = 1;
  return t;
}

unsigned outer_workers(const ExperimentConfig& c, std::size_t items) {
  if (items <= 1) return 1;
  return c.training.workers ? c.training.workers : default_workers();
}

ExperimentRecord run_gibbs(const ExperimentConfig& c) {
  ExperimentRecord rec;
  rec.columns = {"seed", "beta", "energy", "entropy", "log_partition", "fidelity_maximally_mixed"};
  const ComplexOperator h = build_hamiltonian(c.model);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(c.model.n);
  for (const auto& it : work_items(c)) {
    const GibbsTarget g = gibbs_state(h, it.beta);
    const double s = von_neumann_entropy(g.state);
    const double f = uhlmann_fidelity(g.state, mixed);
    rec.ok = rec.ok && fidelity_ok(f) && entropy_ok(s, c.model.n);
    rec.rows.push_back({fmt(it.seed), fmt(it.beta), fmt(expectation(g.state, h)), fmt(s), fmt(g.log_partition), fmt(f)});
  }
  return rec;
}

ExperimentRecord run_training(const ExperimentConfig& c, bool with_traces) {
  ExperimentRecord rec;
  rec.columns = {"seed", "beta", "fidelity", "cost", "min_cost", "energy", "entropy", "iterations", "evaluations",
                 "converged"};
  const ComplexOperator h = build_hamiltonian(c.model);
  AnsatzSpec spec = c.ansatz;
  spec.n = c.model.n;
  const auto items = work_items(c);
  std::vector<TrainingResult> results(items.size());
  std::vector<GibbsTarget> targets(items.size());
  parallel_for(
      items.size(),
      [&](std::size_t i) {
        targets[i] = gibbs_state(h, items[i].beta);
        results[i] = train(spec, h, items[i].beta, item_config(c, items[i].seed, items.size()), &targets[i].state);
      },
      outer_workers(c, items.size()));
  json runs = json::array();
  std::map<std::uint64_t, double> min_fidelity;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& r = results[i];
    const DensityMatrix out = evaluate_ansatz(spec, r.best_params);
    const double s = von_neumann_entropy(out);
    rec.ok = rec.ok && fidelity_ok(r.final_fidelity) && entropy_ok(s, spec.n);
    rec.rows.push_back({fmt(items[i].seed), fmt(items[i].beta), fmt(r.final_fidelity), fmt(r.final_cost),
                        fmt(-targets[i].log_partition), fmt(expectation(out, h)), fmt(s), fmt(r.iterations),
                        fmt(static_cast<long long>(r.evaluations)), fmt_bool(r.converged)});
    auto [pos, inserted] = min_fidelity.emplace(items[i].seed, r.final_fidelity);
    if (!inserted) pos->second = std::min(pos->second, r.final_fidelity);
    if (with_traces) {
      json trace = json::array();
      for (double v : r.cost_trace) trace.push_back(num(v));
      runs.push_back({{"seed", items[i].seed},
                      {"beta", items[i].beta},
                      {"best_restart", r.best_restart},
                      {"restart_costs", r.restart_costs},
                      {"restart_iterations", r.restart_iterations},
                      {"theta", r.best_params.theta},
                      {"lambda", r.best_params.lambda},
                      {"cost_trace", trace}});
    }
  }
  json summary;
  json mins = json::object();
  for (const auto& [seed, f] : min_fidelity) mins[std::to_string(seed)] = f;
  summary["min_fidelity_per_seed"] = mins;
  if (with_traces) summary["runs"] = runs;
  rec.summary = summary.dump();
  return rec;
}

ExperimentRecord run_entropy_bench(const ExperimentConfig& c) {
  const auto& e = c.entropy_bench;
  for (int na : e.n_a) {
    if (na >= e.n) throw ConfigError("entropy_bench.n_a: every entry must be below entropy_bench.n");
  }
  AnsatzSpec spec;
  spec.n = e.n;
  spec.m = e.m;
  spec.generators = c.ansatz.generators;
  for (auto& g : spec.generators) {
    if (g.per_site) throw ConfigError("entropy_bench: generators must share angles across sites");
  }
  spec.channels = {channel_of(ChannelFamily::Depolarizing)};
  const CompiledAnsatz full(spec);
  ExperimentRecord rec;
  rec.columns = {"seed", "n", "n_a", "exact_entropy", "scaled_entropy", "abs_error", "rel_error", "model_rel_error"};
  std::map<int, std::vector<double>> by_na;
  std::vector<std::vector<std::vector<std::string>>> rows(c.seeds.size());
  std::vector<std::vector<std::pair<int, double>>> errs(c.seeds.size());
  parallel_for(
      c.seeds.size(),
      [&](std::size_t i) {
        std::mt19937_64 rng(c.seeds[i]);
        std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
        ParameterVector p;
        p.theta.resize(static_cast<std::size_t>(spec.theta_count()));
        for (auto& t : p.theta) t = ud(rng);
        p.lambda.assign(static_cast<std::size_t>(spec.lambda_count()), e.lambda);
        const double exact = von_neumann_entropy(full.evaluate(p));
        for (int na : e.n_a) {
          const double scaled = scaled_subsystem_entropy(spec, p, e.n, na).value;
          const double rel = exact > 0 ? std::abs(scaled - exact) / exact : 0.0;
          const double model = entropy_error_model({e.n, na, e.lambda, e.m}).relative;
          rows[i].push_back({fmt(c.seeds[i]), fmt(e.n), fmt(na), fmt(exact), fmt(scaled), fmt(std::abs(scaled - exact)),
                             fmt(rel), fmt(model)});
          errs[i].emplace_back(na, rel);
        }
      },
      c.training.workers ? c.training.workers : default_workers());
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    for (auto& r : rows[i]) {
      rec.ok = rec.ok && entropy_ok(std::stod(r[3]), e.n);
      rec.rows.push_back(std::move(r));
    }
    for (auto [na, rel] : errs[i]) by_na[na].push_back(rel);
  }
  json per = json::array();
  for (const auto& [na, v] : by_na) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double se = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1) / static_cast<double>(v.size())) : 0.0;
    const double model = entropy_error_model({e.n, na, e.lambda, e.m}).relative;
    per.push_back({{"n_a", na}, {"mean_rel_error", mean}, {"standard_error", se}, {"model_rel_error", model},
                   {"ratio", model > 0 ? mean / model : 0.0}});
  }
  rec.summary = json{{"per_n_a", per}}.dump();
  return rec;
}

AnsatzSpec family_spec(const std::string& family, bool per_site) {
  AnsatzSpec s;
  s.generators = {coupling_generator(per_site), mixing_generator(per_site)};
  if (family == "nonsymmetric") s.generators.push_back(longitudinal_generator(per_site));
  return s;
}

ExperimentRecord run_grad_variance(const ExperimentConfig& c) {
  const auto& g = c.grad_variance;
  for (int n : g.n_range) {
    if (static_cast<int>(g.observable.size()) > n) throw ConfigError("grad_variance.observable: longer than the smallest register");
  }
  ExperimentRecord rec;
  rec.columns = {"seed", "family", "n", "samples", "mean", "variance", "variance_se"};
  json fits = json::array();
  for (auto seed : c.seeds) {
    for (const char* family : {"symmetric", "nonsymmetric"}) {
      AnsatzSpec spec = family_spec(family, g.per_site);
      spec.m = g.layers;
      const auto res = gradient_variance_study(family, spec, g.observable, g.n_range, g.samples, seed, g.parameter_index);
      for (const auto& r : res.rows) {
        rec.rows.push_back({fmt(seed), family, fmt(r.n), fmt(r.samples), fmt(r.mean), fmt(r.variance), fmt(r.variance_se)});
      }
      fits.push_back({{"seed", seed}, {"family", family}, {"slope", res.slope}, {"intercept", res.intercept}});
    }
  }
  rec.summary = json{{"fits", fits}}.dump();
  return rec;
}

ExperimentRecord run_depth_study(const ExperimentConfig& c) {
  const ComplexOperator h = build_hamiltonian(c.model);
  std::vector<std::pair<std::string, AnsatzSpec>> families;
  for (const auto& name : c.depth_study.families) {
    AnsatzSpec s = family_spec(name, false);
    s.n = c.model.n;
    s.channels = c.ansatz.channels;
    families.emplace_back(name, s);
  }
  ExperimentRecord rec;
  rec.columns = {"seed", "beta", "family", "m", "best_fidelity", "best_cost", "iterations", "mean_iterations"};
  for (const auto& it : work_items(c)) {
    TrainConfig t = c.training;
    t.seed = it.seed;
    for (const auto& r : depth_dependence_study(families, h, it.beta, c.depth_study.m_range, t)) {
      rec.ok = rec.ok && fidelity_ok(r.best_fidelity);
      rec.rows.push_back({fmt(it.seed), fmt(it.beta), r.family, fmt(r.m), fmt(r.best_fidelity), fmt(r.best_cost),
                          fmt(r.iterations), fmt(r.mean_iterations)});
    }
  }
  return rec;
}

ComplexOperator pauli_word(const std::string& w) { return PauliString{w, 1.0}.to_matrix(); }

KrausChannel embed_channel(const KrausChannel& ch, std::vector<int> sites, int n) {
  std::vector<ComplexOperator> ops;
  for (const auto& k : ch.kraus_ops()) ops.push_back(embed_operator(k, sites, n));
  return KrausChannel(std::move(ops));
}

LindbladGenerator embed_generator(const LindbladGenerator& g, std::vector<int> sites, int n) {
  LindbladGenerator out;
  if (g.hamiltonian.size() > 0) out.hamiltonian = embed_operator(g.hamiltonian, sites, n);
  for (const auto& l : g.jumps) out.jumps.push_back(embed_operator(l, sites, n));
  return out;
}

struct SymmetryCase {
  std::string channel;
  std::string group_label;
  SymmetryGroup group;
  std::optional<KrausChannel> kraus;
  std::optional<LindbladGenerator> lindblad;
};

std::vector<SymmetryCase> symmetry_cases() {
  const auto xx = SymmetryGroup::generated_by({pauli_word("XX")});
  const auto xxx = SymmetryGroup::generated_by({pauli_word("XXX")});
  const auto b4 = SymmetryGroup::from_elements({pauli_word("III"), pauli_word("XXX"), pauli_word("XII"), pauli_word("IXX")});
  std::vector<SymmetryCase> cases;
  cases.push_back({"bitflip", "{III,XXX}", xxx, embed_channel(pauli_channel(PauliChannelKind::Bitflip, 0.3), {0}, 3), {}});
  cases.push_back({"phaseflip", "{III,XXX}", xxx, embed_channel(pauli_channel(PauliChannelKind::Phaseflip, 0.3), {0}, 3), {}});
  cases.push_back(
      {"depolarizing", "{III,XXX}", xxx, embed_channel(pauli_channel(PauliChannelKind::Depolarizing, 0.3), {0}, 3), {}});
  cases.push_back({"kraus{ZII,ZZZ}", "{III,XXX,XII,IXX}", b4,
                   KrausChannel({std::sqrt(0.5) * pauli_word("ZII"), std::sqrt(0.5) * pauli_word("ZZZ")}), {}});
  cases.push_back({"ising_projector", "{II,XX}", xx, ising_projector_channel(0.4), {}});
  cases.push_back({"tfim_jump", "{II,XX}", xx, {}, embed_generator(tfim_jump(0.5, 0.3), {0}, 2)});
  cases.push_back({"heisenberg_pair", "{II,XX}", xx, {}, heisenberg_pair_jumps(0.7, 0.4)});
  cases.push_back({"heisenberg_pair", "{III,XXX}", xxx, {}, embed_generator(heisenberg_pair_jumps(0.7, 0.4), {0, 1}, 3)});
  return cases;
}

ExperimentRecord run_symmetry_check(const ExperimentConfig&) {
  ExperimentRecord rec;
  rec.columns = {"channel", "group", "weakly_symmetric", "strongly_symmetric", "phases", "sector_permutation",
                 "weak_residual", "strong_residual"};
  json tables = json::array();
  for (auto& sc : symmetry_cases()) {
    const SymmetryReport r = sc.kraus ? check_strong_symmetry(*sc.kraus, sc.group) : check_lindblad_symmetry(*sc.lindblad, sc.group);
    std::string phases, perm;
    for (std::size_t i = 0; i < r.phases.size(); ++i) phases += (i ? " " : "") + fmt(r.phases[i]);
    const CharacterTable table = character_table(sc.group);
    if (r.strongly_symmetric && sc.kraus) {
      const auto p = sector_permutation(*sc.kraus, sc.group, table);
      for (std::size_t i = 0; i < p.size(); ++i) perm += (i ? " " : "") + std::to_string(p[i]);
    }
    if (sc.lindblad && !r.kraus_cross_check) rec.ok = false;
    rec.rows.push_back({sc.channel, sc.group_label, fmt_bool(r.weakly_symmetric), fmt_bool(r.strongly_symmetric), phases,
                        perm, fmt(r.weak_residual), fmt(r.strong_residual)});
    json chars = json::array();
    for (const auto& row : table.characters) {
      json cr = json::array();
      for (const auto& z : row) cr.push_back(static_cast<int>(std::lround(z.real())));
      chars.push_back(cr);
    }
    tables.push_back({{"group", sc.group_label}, {"characters_real", chars}});
  }
  rec.summary = json{{"character_tables", tables}}.dump();
  return rec;
}

ComplexOperator random_complex(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> nd;
  ComplexOperator m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(nd(rng), nd(rng));
  }
  return m;
}

ExperimentRecord run_qoft_bench(const ExperimentConfig& c) {
  const auto& q = c.qoft_bench;
  const Eigen::Index d = Eigen::Index{1} << q.qubits;
  std::vector<double> grid;
  for (int i = 0; i < q.points; ++i) {
    grid.push_back(q.points == 1 ? q.omega_min : q.omega_min + (q.omega_max - q.omega_min) * i / (q.points - 1));
  }
  ExperimentRecord rec;
  rec.columns = {"seed", "pair", "omega", "lhs_norm", "bound", "gamma", "pass"};
  json pairs = json::array();
  double quad_err = 0.0;
  bool all_pass = true;
  for (auto seed : c.seeds) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < q.pairs; ++k) {
      ComplexOperator h = random_complex(rng, d);
      h = (0.5 * (h + h.adjoint())).eval();
      const ComplexOperator a = random_complex(rng, d);
      const double beta = q.beta_norm / spectral_norm(h);
      const auto rep = verify_jump_inequality(h, a, beta, grid, q.odd_term);
      all_pass = all_pass && rep.all_pass;
      const BohrDecomposition bohr = bohr_decomposition(h);
      for (const auto& row : rep.rows) {
        rec.rows.push_back({fmt(seed), fmt(k), fmt(row.omega), fmt(row.lhs_norm), fmt(row.bound), fmt(row.gamma), fmt_bool(row.pass)});
        const double err = (exact_filtered_jump(bohr, a, row.omega, beta) - quadrature_filtered_jump(h, a, row.omega, beta)).norm();
        quad_err = std::max(quad_err, err);
      }
      pairs.push_back({{"seed", seed}, {"pair", k}, {"beta", beta}, {"integrated_bound", rep.integrated_bound}, {"all_pass", rep.all_pass}});
    }
  }
  std::vector<double> lb, li;
  json slope_points = json::array();
  for (int i = 0; i < q.slope_points; ++i) {
    const double t = static_cast<double>(i) / (q.slope_points - 1);
    const double beta = q.slope_beta_min * std::pow(q.slope_beta_max / q.slope_beta_min, t);
    const double ib = integrated_bound(truncation_bound(1.0, 1.0, beta, q.odd_term));
    lb.push_back(std::log(beta));
    li.push_back(std::log(ib));
    slope_points.push_back({{"beta", beta}, {"integrated_bound", ib}});
  }
  const auto [slope, intercept] = linear_fit(lb, li);
  rec.ok = all_pass && quad_err <= 1e-6;
  rec.summary = json{{"all_pass", all_pass},
                     {"max_quadrature_discrepancy", quad_err},
                     {"odd_term", odd_term_name(q.odd_term)},
                     {"pairs", pairs},
                     {"slope", slope},
                     {"intercept", intercept},
                     {"slope_points", slope_points}}
                    .dump();
  return rec;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& [k, name] : experiment_table()) {
    if (k == e) return name.c_str();
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& [k, n] : experiment_table()) {
    if (n == name) return k;
  }
  throw ConfigError("unknown experiment \"" + name + "\"");
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, n] : experiment_table()) v.push_back(n);
    return v;
  }();
  return names;
}

ExperimentConfig validate_config(const std::string& raw) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < raw.size(); ++i) {
      if (raw[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  check_keys(j, "", {"experiment", "model", "beta_grid", "ansatz", "training", "cost", "seeds", "output_path",
                     "entropy_bench", "grad_variance", "depth_study", "qoft_bench"});
  ExperimentConfig c;
  if (!j.contains("experiment")) fail("experiment", "missing");
  c.experiment = parse_experiment(read_string(j["experiment"], "experiment"));
  if_present(j, "", "model", [&](const json& v, const std::string& p) { c.model = read_model(v, p); });
  if_present(j, "", "beta_grid", [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.empty()) fail(p, "expected a nonempty array of numbers");
    c.beta_grid.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string ip = p + "[" + std::to_string(i) + "]";
      const double b = read_real(v[i], ip);
      if (b < 0) fail(ip, "beta must be >= 0");
      c.beta_grid.push_back(b);
    }
  });
  c.ansatz = default_ansatz(c.model);
  if_present(j, "", "ansatz", [&](const json& v, const std::string& p) {
    check_keys(v, p, {"m", "generators", "channels"});
    if_present(v, p, "m", [&](const json& x, const std::string& xp) { c.ansatz.m = read_int_in(x, xp, 0, 100000); });
    if_present(v, p, "generators", [&](const json& x, const std::string& xp) {
      if (!x.is_array()) fail(xp, "expected an array");
      c.ansatz.generators.clear();
      for (std::size_t i = 0; i < x.size(); ++i) {
        c.ansatz.generators.push_back(read_generator(x[i], xp + "[" + std::to_string(i) + "]", c.model));
      }
    });
    if_present(v, p, "channels", [&](const json& x, const std::string& xp) {
      if (!x.is_array()) fail(xp, "expected an array");
      c.ansatz.channels.clear();
      for (std::size_t i = 0; i < x.size(); ++i) c.ansatz.channels.push_back(read_channel(x[i], xp + "[" + std::to_string(i) + "]"));
    });
  });
  c.ansatz.n = c.model.n;
  for (auto& ch : c.ansatz.channels) ch.bounds = ch.resolved_bounds();
  if_present(j, "", "training", [&](const json& v, const std::string& p) { read_training(v, p, c.training); });
  if_present(j, "", "cost", [&](const json& v, const std::string& p) { read_cost(v, p, c.training.cost); });
  if (c.training.cost.n_a >= c.model.n || c.training.cost.n_b >= c.model.n) {
    if (c.training.cost.method == EntropyMethod::ScaledSubsystem) fail("cost.n_a", "subsystem sizes must be below model.n");
  }
  if (c.training.cost.regularize && c.training.cost.method != EntropyMethod::ScaledSubsystem) {
    fail("cost.regularize", "only valid with entropy_method scaled_subsystem");
  }
  if_present(j, "", "seeds", [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.empty()) fail(p, "expected a nonempty array of seeds");
    c.seeds.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string ip = p + "[" + std::to_string(i) + "]";
      if (!v[i].is_number_unsigned()) fail(ip, "expected a nonnegative integer");
      c.seeds.push_back(v[i].get<std::uint64_t>());
    }
  });
  if_present(j, "", "output_path", [&](const json& v, const std::string& p) { c.output_path = read_string(v, p); });
  if_present(j, "", "entropy_bench", [&](const json& v, const std::string& p) { read_entropy_bench(v, p, c.entropy_bench); });
  if_present(j, "", "grad_variance", [&](const json& v, const std::string& p) { read_grad_variance(v, p, c.grad_variance); });
  if_present(j, "", "depth_study", [&](const json& v, const std::string& p) { read_depth_study(v, p, c.depth_study); });
  if_present(j, "", "qoft_bench", [&](const json& v, const std::string& p) { read_qoft_bench(v, p, c.qoft_bench); });
  return c;
}

std::string canonical_config(const ExperimentConfig& config) { return config_json(config).dump(); }

std::string config_hash(const ExperimentConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_config(config))));
  return buf;
}

void apply_quick(ExperimentConfig& c) {
  c.model.n = std::min(c.model.n, 4);
  c.ansatz.n = c.model.n;
  c.seeds.resize(1);
  c.training.restarts = std::min(c.training.restarts, 2);
  c.training.optimizer.max_iters = std::min(c.training.optimizer.max_iters, 100);
  c.training.cost.n_a = std::min(c.training.cost.n_a, c.model.n - 1);
  c.training.cost.n_b = std::min(c.training.cost.n_b, c.model.n - 1);
  c.entropy_bench.n = std::min(c.entropy_bench.n, 6);
  std::erase_if(c.entropy_bench.n_a, [&](int na) { return na >= c.entropy_bench.n; });
  if (c.entropy_bench.n_a.empty()) c.entropy_bench.n_a = {c.entropy_bench.n - 1};
  std::erase_if(c.grad_variance.n_range, [](int n) { return n > 6; });
  if (c.grad_variance.n_range.empty()) c.grad_variance.n_range = {4, 5, 6};
  c.grad_variance.layers = std::min(c.grad_variance.layers, 10);
  c.grad_variance.samples = std::min(c.grad_variance.samples, 20);
  if (c.depth_study.m_range.size() > 2) c.depth_study.m_range.resize(2);
  c.qoft_bench.pairs = std::min(c.qoft_bench.pairs, 3);
  c.qoft_bench.points = std::min(c.qoft_bench.points, 21);
}

void apply_seed_override(ExperimentConfig& config, std::uint64_t seed) { config.seeds = {seed}; }

int max_qubits() {
  if (const char* env = std::getenv("THERMALIZER_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return kDefaultMaxQubits;
}

void check_resources(const ExperimentConfig& c) {
  const int limit = max_qubits();
  auto guard = [&](int n, const char* what) {
    if (n > limit) {
      throw ResourceLimitError(std::string(what) + " needs " + std::to_string(n) + " qubits, limit is " + std::to_string(limit) +
                               " (set THERMALIZER_MAX_QUBITS to raise it)");
    }
  };
  switch (c.experiment) {
    case Experiment::EntropyBench:
      guard(c.entropy_bench.n, "entropy_bench.n");
      break;
    case Experiment::GradVariance:
      guard(*std::max_element(c.grad_variance.n_range.begin(), c.grad_variance.n_range.end()), "grad_variance.n_range");
      break;
    case Experiment::QoftBench:
      guard(c.qoft_bench.qubits, "qoft_bench.qubits");
      break;
    case Experiment::SymmetryCheck:
      break;
    default:
      guard(c.model.n, "model.n");
  }
}

ExperimentRecord run(const ExperimentConfig& config) {
  check_resources(config);
  ExperimentRecord rec;
  try {
    switch (config.experiment) {
      case Experiment::Gibbs: rec = run_gibbs(config); break;
      case Experiment::Train: rec = run_training(config, true); break;
      case Experiment::SweepBeta: rec = run_training(config, false); break;
      case Experiment::EntropyBench: rec = run_entropy_bench(config); break;
      case Experiment::GradVariance: rec = run_grad_variance(config); break;
      case Experiment::DepthStudy: rec = run_depth_study(config); break;
      case Experiment::SymmetryCheck: rec = run_symmetry_check(config); break;
      case Experiment::QoftBench: rec = run_qoft_bench(config); break;
    }
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  } catch (const UnsupportedInput& e) {
    throw ConfigError(e.what());
  }
  rec.experiment = experiment_name(config.experiment);
  rec.config_hash = config_hash(config);
  return rec;
}

std::string record_csv(const ExperimentRecord& record) {
  std::string out;
  for (std::size_t i = 0; i < record.columns.size(); ++i) out += (i ? "," : "") + csv_escape(record.columns[i]);
  out += '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i]);
    out += '\n';
  }
  return out;
}

std::string record_json(const ExperimentRecord& record, const ExperimentConfig& config) {
  json rows = json::array();
  for (const auto& row : record.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[record.columns[i]] = row[i];
    rows.push_back(r);
  }
  const json j = {{"experiment", record.experiment},
                  {"config_hash", record.config_hash},
                  {"artifact_version", record.artifact_version},
                  {"config", config_json(config)},
                  {"columns", record.columns},
                  {"rows", rows},
                  {"summary", json::parse(record.summary)},
                  {"ok", record.ok}};
  return j.dump(2) + "\n";
}

std::string write_record(const ExperimentRecord& record, const ExperimentConfig& config, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = (std::filesystem::path(dir) / (record.experiment + "-" + record.config_hash)).string();
  std::ofstream(stem + ".csv", std::ios::binary) << record_csv(record);
  std::ofstream(stem + ".json", std::ios::binary) << record_json(record, config);
  return stem;
}

}  // namespace thermalizer
