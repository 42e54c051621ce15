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

#include "thermalizer/vqt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"
#include "thermalizer/models.hpp"
#include "thermalizer/parallel.hpp"

namespace thermalizer {

struct CostFunction::Impl {
  AnsatzSpec spec;
  ComplexOperator h;
  double beta = 0.0;
  CostOptions options;
  CompiledAnsatz full;
  std::optional<CompiledAnsatz> small_a;
  std::optional<CompiledAnsatz> small_b;

  Impl(AnsatzSpec s, ComplexOperator hh, double b, CostOptions o)
      : spec(s), h(std::move(hh)), beta(b), options(o), full(std::move(s)) {}
};

CostFunction::CostFunction(AnsatzSpec spec, ComplexOperator h, double beta, CostOptions options) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and >= 0");
  if (h.rows() != (Eigen::Index{1} << spec.n) || h.cols() != h.rows()) {
    throw InvalidInput("Hamiltonian does not match the ansatz register");
  }
  if (!is_hermitian(h)) throw InvalidInput("Hamiltonian must be Hermitian");
  impl_ = std::make_unique<Impl>(spec, std::move(h), beta, options);
  if (options.method == EntropyMethod::ScaledSubsystem) {
    if (!spec.size_parametric()) throw UnsupportedInput("scaled subsystem entropy needs a size-parametric ansatz");
    if (options.n_a < 2 || options.n_a > spec.n) throw InvalidInput("need 2 <= n_a <= n");
    impl_->small_a.emplace(spec.resized(options.n_a));
    if (options.regularize) {
      if (options.n_b < 2 || options.n_b > spec.n) throw InvalidInput("need 2 <= n_b <= n");
      impl_->small_b.emplace(spec.resized(options.n_b));
    }
  } else if (options.regularize) {
    throw UnsupportedInput("regularization applies to the scaled subsystem method only");
  }
  if (options.method == EntropyMethod::AnalyticDepolarizing) {
    if (spec.channels.size() != 1 || spec.channels.front().family != ChannelFamily::Depolarizing ||
        spec.channels.front().per_site) {
      throw UnsupportedInput("analytic entropy needs one shared depolarizing channel per layer");
    }
  }
}

CostFunction::~CostFunction() = default;
CostFunction::CostFunction(CostFunction&&) noexcept = default;

const AnsatzSpec& CostFunction::spec() const { return impl_->spec; }

DensityMatrix CostFunction::state(const ParameterVector& params) const { return impl_->full.evaluate(params); }

CostBreakdown CostFunction::breakdown(const ParameterVector& params) const {
  const Impl& s = *impl_;
  const DensityMatrix rho = s.full.evaluate(params);
  CostBreakdown b;
  b.energy = expectation(rho, s.h);
  const int n = s.spec.n;
  switch (s.options.method) {
    case EntropyMethod::Exact:
      b.entropy = von_neumann_entropy(rho);
      break;
    case EntropyMethod::ScaledSubsystem:
      b.entropy = static_cast<double>(n) / s.options.n_a * von_neumann_entropy(s.small_a->evaluate(params));
      if (s.small_b) {
        b.entropy_b = static_cast<double>(n) / s.options.n_b * von_neumann_entropy(s.small_b->evaluate(params));
        b.cost = regularized_cost(b.energy, b.entropy, b.entropy_b, s.beta);
        return b;
      }
      break;
    case EntropyMethod::AnalyticDepolarizing: {
      std::vector<double> layers(params.lambda.begin(), params.lambda.end());
      const auto bounds = s.spec.lambda_bounds();
      for (std::size_t i = 0; i < layers.size(); ++i) layers[i] = std::clamp(layers[i], bounds[i].lower, bounds[i].upper);
      b.entropy = analytic_depolarizing_entropy(layers, n);
      break;
    }
    case EntropyMethod::VariationalBound: {
      std::vector<std::vector<int>> parts;
      for (int k = 0; k < n; ++k) parts.push_back({k});
      VariationalOptions vo;
      vo.max_evaluations = s.options.variational_budget;
      b.entropy = variational_entropy_bound(rho, parts, disentangler_from_ansatz(s.spec, params), vo).value;
      break;
    }
  }
  b.cost = s.beta * b.energy - b.entropy;
  return b;
}

double cost(const AnsatzSpec& spec, const ParameterVector& params, const ComplexOperator& h, double beta,
            EntropyMethod method, bool regularize) {
  CostOptions o;
  o.method = method;
  o.regularize = regularize;
  return CostFunction(spec, h, beta, o)(params);
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ParameterVector initial_parameters(const AnsatzSpec& spec, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, sigma);
  ParameterVector p;
  p.theta.resize(static_cast<std::size_t>(spec.theta_count()));
  for (auto& t : p.theta) t = nd(rng);
  p.lambda = midpoint_lambda(spec);
  return p;
}

TrainingResult train(const AnsatzSpec& spec, const ComplexOperator& h, double beta, const TrainConfig& config,
                     const DensityMatrix* target) {
  if (config.restarts < 1) throw InvalidInput("need at least one restart");
  const CostFunction fn(spec, h, beta, config.cost);
  const std::size_t restarts = static_cast<std::size_t>(config.restarts);
  std::vector<OptimizeResult> results(restarts);
  parallel_for(
      restarts,
      [&](std::size_t r) {
        const ParameterVector p0 = initial_parameters(spec, restart_seed(config.seed, static_cast<int>(r)),
                                                      config.theta_sigma);
        const Objective obj = [&](const std::vector<double>& raw) { return fn(params_from_raw(spec, raw)); };
        results[r] = minimize(obj, raw_from_params(spec, p0), config.optimizer);
      },
      config.workers);
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (results[r].fx < results[best].fx) best = r;
  }
  TrainingResult out;
  out.seed = config.seed;
  out.best_restart = static_cast<int>(best);
  out.best_params = params_from_raw(spec, results[best].x);
  out.cost_trace = results[best].trace;
  out.iterations = results[best].iterations;
  out.converged = results[best].converged;
  out.final_cost = results[best].fx;
  for (const auto& r : results) {
    out.restart_costs.push_back(r.fx);
    out.restart_iterations.push_back(r.iterations);
    out.evaluations += r.evaluations;
  }
  out.final_fidelity = target ? uhlmann_fidelity(fn.state(out.best_params), *target)
                              : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("linear fit needs at least two matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidInput("degenerate abscissae in linear fit");
  const double slope = (n * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / n};
}

namespace {

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

GradientVarianceResult gradient_variance_study(const std::string& family, const AnsatzSpec& spec_template,
                                               const std::string& observable, const std::vector<int>& n_range,
                                               int samples, std::uint64_t seed, int parameter_index) {
  if (samples < 2) throw InvalidInput("need at least two samples");
  GradientVarianceResult res;
  res.family = family;
  std::vector<double> xs, ys;
  for (std::size_t idx = 0; idx < n_range.size(); ++idx) {
    const int n = n_range[idx];
    if (static_cast<int>(observable.size()) > n) throw InvalidInput("observable longer than the register");
    AnsatzSpec spec = spec_template;
    spec.n = n;
    const CompiledAnsatz ansatz(spec);
    if (!ansatz.all_channels_identity()) throw InvalidInput("gradient study needs identity channels");
    if (parameter_index < 0 || parameter_index >= spec.theta_count()) throw InvalidInput("parameter index out of range");
    PauliString obs{observable + std::string(static_cast<std::size_t>(n) - observable.size(), 'I'), 1.0};
    const bool constant = observable.find_first_not_of('I') == std::string::npos;
    auto measure = [&](const ParameterVector& p) {
      const StateVector psi = ansatz.evaluate_pure(p);
      return psi.dot(apply_pauli(obs, psi)).real();
    };
    std::mt19937_64 rng(restart_seed(seed, n));
    std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
    std::vector<double> grads;
    for (int s = 0; s < samples; ++s) {
      ParameterVector p;
      p.theta.resize(static_cast<std::size_t>(spec.theta_count()));
      for (auto& t : p.theta) t = ud(rng);
      p.lambda.assign(static_cast<std::size_t>(spec.lambda_count()), 0.0);
      if (constant) {
        grads.push_back(0.0);
        continue;
      }
      const double h = 1e-4;
      ParameterVector pp = p, pm = p;
      pp.theta[static_cast<std::size_t>(parameter_index)] += h;
      pm.theta[static_cast<std::size_t>(parameter_index)] -= h;
      grads.push_back((measure(pp) - measure(pm)) / (2 * h));
    }
    GradientVarianceRow row;
    row.n = n;
    row.samples = samples;
    for (double g : grads) row.mean += g;
    row.mean /= samples;
    row.variance = sample_variance(grads);
    // Bootstrap spread of the variance estimate.
    std::mt19937_64 boot(restart_seed(seed ^ 0xB00757A9ULL, n));
    std::uniform_int_distribution<int> pick(0, samples - 1);
    std::vector<double> reps;
    for (int b = 0; b < 200; ++b) {
      std::vector<double> draw;
      for (int s = 0; s < samples; ++s) draw.push_back(grads[static_cast<std::size_t>(pick(boot))]);
      reps.push_back(sample_variance(draw));
    }
    row.variance_se = std::sqrt(sample_variance(reps));
    res.rows.push_back(row);
    if (row.variance > 0) {
      xs.push_back(n);
      ys.push_back(std::log(row.variance));
    }
  }
  if (xs.size() >= 2) std::tie(res.slope, res.intercept) = linear_fit(xs, ys);
  return res;
}

std::vector<DepthRow> depth_dependence_study(const std::vector<std::pair<std::string, AnsatzSpec>>& families,
                                             const ComplexOperator& h, double beta, const std::vector<int>& m_range,
                                             const TrainConfig& config) {
  const GibbsTarget gibbs = gibbs_state(h, beta);
  std::vector<DepthRow> rows;
  for (const auto& [name, base] : families) {
    for (int m : m_range) {
      AnsatzSpec spec = base;
      spec.m = m;
      const TrainingResult r = train(spec, h, beta, config, &gibbs.state);
      DepthRow row;
      row.family = name;
      row.m = m;
      row.best_fidelity = r.final_fidelity;
      row.best_cost = r.final_cost;
      row.iterations = r.iterations;
      double sum = 0;
      for (int it : r.restart_iterations) sum += it;
      row.mean_iterations = sum / static_cast<double>(r.restart_iterations.size());
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace thermalizer
