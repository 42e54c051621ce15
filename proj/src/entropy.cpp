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

#include "thermalizer/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"

namespace thermalizer {

namespace {

double xlogx(double x) { return x > kEigenFloor ? x * std::log(x) : 0.0; }

}  // namespace

const char* entropy_method_name(EntropyMethod m) {
  switch (m) {
    case EntropyMethod::Exact: return "exact";
    case EntropyMethod::ScaledSubsystem: return "scaled_subsystem";
    case EntropyMethod::AnalyticDepolarizing: return "analytic_depolarizing";
    case EntropyMethod::VariationalBound: return "variational_bound";
  }
  return "?";
}

EntropyMethod parse_entropy_method(const std::string& name) {
  for (EntropyMethod m : {EntropyMethod::Exact, EntropyMethod::ScaledSubsystem, EntropyMethod::AnalyticDepolarizing,
                          EntropyMethod::VariationalBound}) {
    if (name == entropy_method_name(m)) return m;
  }
  throw InvalidInput("unknown entropy method: " + name);
}

EntropyEstimate exact_entropy(const DensityMatrix& rho) {
  EntropyEstimate e;
  e.value = von_neumann_entropy(rho);
  e.method = EntropyMethod::Exact;
  e.n = rho.qubits();
  e.n_a = e.n;
  return e;
}

EntropyEstimate scaled_subsystem_entropy(const AnsatzSpec& spec, const ParameterVector& params, int n, int n_a) {
  if (!spec.size_parametric()) throw UnsupportedInput("scaled subsystem entropy needs a size-parametric ansatz");
  if (n_a < 2 || n_a > n) throw InvalidInput("need 2 <= n_a <= n");
  const DensityMatrix small = CompiledAnsatz(spec.resized(n_a)).evaluate(params);
  EntropyEstimate e;
  e.value = static_cast<double>(n) / n_a * von_neumann_entropy(small);
  e.method = EntropyMethod::ScaledSubsystem;
  e.n = n;
  e.n_a = n_a;
  return e;
}

double analytic_depolarizing_entropy(std::span<const double> layer_lambdas, int n) {
  double keep = 1.0;
  for (double l : layer_lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw InvalidInput("depolarizing parameter must lie in [0, 1]");
    keep *= 1.0 - l;
  }
  const double half = 0.5 * (1.0 - keep);
  return std::max(0.0, -n * (xlogx(1.0 - half) + xlogx(half)));
}

EntropyEstimate analytic_depolarizing_entropy(double lambda, int m, int n) {
  if (m < 0 || n < 1) throw InvalidInput("need m >= 0 and n >= 1");
  const std::vector<double> layers(static_cast<std::size_t>(m), lambda);
  EntropyEstimate e;
  e.value = analytic_depolarizing_entropy(layers, n);
  e.method = EntropyMethod::AnalyticDepolarizing;
  e.n = n;
  e.n_a = n;
  return e;
}

double model_state_entropy(double alpha, int n) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  const double dim = std::ldexp(1.0, n);
  const double noise = (1.0 - alpha) / dim;
  return std::max(0.0, -xlogx(alpha + noise) - (dim - 1.0) * xlogx(noise));
}

double EntropyErrorModel::alpha() const { return std::exp(-lambda * n * m); }

EntropyError entropy_error_model(const EntropyErrorModel& model) {
  if (model.n_a > model.n || model.n_a < 1) throw InvalidInput("need 1 <= n_a <= n");
  if (model.lambda < 0 || model.m < 0) throw InvalidInput("lambda and m must be >= 0");
  const double rel = std::exp(-model.n_a * model.lambda * model.m);
  return {rel * model.n * std::numbers::ln2, rel};
}

Disentangler disentangler_from_ansatz(const AnsatzSpec& spec, const ParameterVector& params) {
  if (params.theta.size() != static_cast<std::size_t>(spec.theta_count())) {
    throw InvalidInput("parameter count does not match the ansatz");
  }
  // Forward gate list with angles, then reversed and negated.
  std::vector<PauliString> gates;
  std::vector<double> angles;
  std::size_t ti = 0;
  for (int j = 0; j < spec.m; ++j) {
    for (const auto& g : spec.generators) {
      const auto placed = place_generator(g, spec.n);
      const double shared = g.per_site ? 0.0 : params.theta[ti++];
      for (const auto& p : placed) {
        const double th = g.per_site ? params.theta[ti++] : shared;
        gates.push_back(PauliString{p.ops, 1.0});
        angles.push_back(th * p.coefficient);
      }
    }
  }
  Disentangler d;
  for (std::size_t k = gates.size(); k-- > 0;) {
    d.gates.push_back(gates[k]);
    d.initial_angles.push_back(-angles[k]);
  }
  return d;
}

Disentangler generic_disentangler(int n, int depth) {
  Disentangler d;
  auto gate = [&](std::initializer_list<std::pair<int, char>> ops) {
    PauliString p{std::string(static_cast<std::size_t>(n), 'I'), 1.0};
    for (auto [k, c] : ops) p.ops[static_cast<std::size_t>(k)] = c;
    d.gates.push_back(p);
  };
  for (int l = 0; l < depth; ++l) {
    for (int k = 0; k < n; ++k) {
      for (char c : {'X', 'Y', 'Z'}) gate({{k, c}});
    }
    // Bell pairs are eigenstates of XX, YY and ZZ, so the mixed ZX/XZ terms
    // are what actually disentangles.
    for (int k = 0; k < n && n > 1; ++k) {
      const int j = (k + 1) % n;
      for (const char* cc : {"XX", "YY", "ZZ", "ZX", "XZ"}) gate({{k, cc[0]}, {j, cc[1]}});
      if (n == 2) break;
    }
  }
  // Zero angles sit on a stationary point for symmetric states.
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd(0.0, 0.1);
  for (std::size_t i = 0; i < d.gates.size(); ++i) d.initial_angles.push_back(nd(rng));
  return d;
}

EntropyEstimate variational_entropy_bound(const DensityMatrix& rho, const std::vector<std::vector<int>>& partition,
                                          const Disentangler& family, const VariationalOptions& options) {
  const int n = rho.qubits();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& part : partition) {
    if (part.empty()) throw InvalidInput("partition blocks must be nonempty");
    for (int s : part) {
      if (s < 0 || s >= n) throw InvalidInput("partition site out of range");
      if (seen[static_cast<std::size_t>(s)]++) throw InvalidInput("partition blocks overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InvalidInput("partition does not cover every site");
  if (family.gates.size() != family.initial_angles.size()) throw InvalidInput("disentangler angle count mismatch");
  for (const auto& g : family.gates) {
    if (g.size() != n) throw InvalidInput("disentangler gate size mismatch");
  }

  auto bound = [&](const std::vector<double>& angles) {
    ComplexOperator m = rho.matrix();
    ComplexOperator scratch(m.rows(), m.cols());
    for (std::size_t k = 0; k < family.gates.size(); ++k) apply_pauli_rotation(m, family.gates[k], angles[k], scratch);
    const DensityMatrix out = DensityMatrix::trusted(std::move(m));
    double s = 0.0;
    for (const auto& part : partition) s += von_neumann_entropy(partial_trace(out, part));
    return s;
  };

  OptimizerOptions opt = options.optimizer;
  opt.max_evaluations = options.max_evaluations;
  EntropyEstimate e;
  e.method = EntropyMethod::VariationalBound;
  e.n = n;
  e.n_a = n;
  if (family.gates.empty()) {
    e.value = bound({});
    e.evaluations = 1;
    return e;
  }
  const OptimizeResult r = minimize(bound, family.initial_angles, opt);
  e.value = r.fx;
  e.evaluations = r.evaluations;
  e.budget_exhausted = !r.converged && options.max_evaluations > 0 && r.evaluations >= options.max_evaluations;
  return e;
}

double regularized_cost(double energy, double s_a, double s_b, double beta) {
  return (1.0 - std::abs(s_a - s_b)) * (beta * energy - s_a);
}

}  // namespace thermalizer
