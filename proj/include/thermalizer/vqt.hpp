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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thermalizer/ansatz.hpp"
#include "thermalizer/entropy.hpp"
#include "thermalizer/optimize.hpp"
#include "thermalizer/qcore.hpp"

namespace thermalizer {

struct CostOptions {
  EntropyMethod method = EntropyMethod::Exact;
  /// Scaled-subsystem only: multiply by (1 - |S_a - S_b|).
  bool regularize = false;
  int n_a = 3;
  int n_b = 4;
  /// Variational-bound only: optimizer calls per cost evaluation.
  long variational_budget = 200;
};

struct CostBreakdown {
  double energy = 0.0;   // <H>
  double entropy = 0.0;  // estimate used by the cost
  double entropy_b = 0.0;
  double cost = 0.0;
};

/// beta <H> - S_hat for one ansatz, Hamiltonian and temperature.
class CostFunction {
 public:
  CostFunction(AnsatzSpec spec, ComplexOperator h, double beta, CostOptions options = {});
  ~CostFunction();
  CostFunction(CostFunction&&) noexcept;

  CostBreakdown breakdown(const ParameterVector& params) const;
  double operator()(const ParameterVector& params) const { return breakdown(params).cost; }
  DensityMatrix state(const ParameterVector& params) const;
  const AnsatzSpec& spec() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double cost(const AnsatzSpec& spec, const ParameterVector& params, const ComplexOperator& h, double beta,
            EntropyMethod method = EntropyMethod::Exact, bool regularize = false);

struct TrainConfig {
  OptimizerOptions optimizer;
  int restarts = 5;
  std::uint64_t seed = 1;
  double theta_sigma = 0.1;
  unsigned workers = 0;
  CostOptions cost;
};

struct TrainingResult {
  ParameterVector best_params;
  std::vector<double> cost_trace;
  int iterations = 0;
  bool converged = false;
  /// NaN when no target was supplied.
  double final_fidelity = 0.0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  double final_cost = 0.0;
  std::vector<double> restart_costs;
  std::vector<int> restart_iterations;
  long evaluations = 0;
};

/// Seed for restart r of a run seeded with `seed`.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

/// Initial point: theta ~ N(0, sigma), lambda at mid-bound.
ParameterVector initial_parameters(const AnsatzSpec& spec, std::uint64_t seed, double sigma);

TrainingResult train(const AnsatzSpec& spec, const ComplexOperator& h, double beta, const TrainConfig& config,
                     const DensityMatrix* target = nullptr);

struct GradientVarianceRow {
  int n = 0;
  int samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// Bootstrap standard error of the variance.
  double variance_se = 0.0;
};

struct GradientVarianceResult {
  std::string family;
  std::vector<GradientVarianceRow> rows;
  /// Least-squares fit ln(variance) = intercept + slope * n.
  double slope = 0.0;
  double intercept = 0.0;
};

/// Variance over uniform angles in [0, 2pi) of d<O>/d theta_k (central
/// difference, step 1e-4). Channels must all be Identity. `observable` is a
/// local pattern placed from site 0 (e.g. "ZZ").
GradientVarianceResult gradient_variance_study(const std::string& family, const AnsatzSpec& spec_template,
                                               const std::string& observable, const std::vector<int>& n_range,
                                               int samples, std::uint64_t seed, int parameter_index = 0);

struct DepthRow {
  std::string family;
  int m = 0;
  double best_fidelity = 0.0;
  double best_cost = 0.0;
  int iterations = 0;          // best restart
  double mean_iterations = 0;  // over restarts
};

/// Trains every family at every depth against the Gibbs state of h.
std::vector<DepthRow> depth_dependence_study(const std::vector<std::pair<std::string, AnsatzSpec>>& families,
                                             const ComplexOperator& h, double beta, const std::vector<int>& m_range,
                                             const TrainConfig& config);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace thermalizer
