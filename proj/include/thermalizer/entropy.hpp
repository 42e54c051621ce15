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

#include <span>
#include <string>
#include <vector>

#include "thermalizer/ansatz.hpp"
#include "thermalizer/optimize.hpp"
#include "thermalizer/qcore.hpp"

namespace thermalizer {

enum class EntropyMethod { Exact, ScaledSubsystem, AnalyticDepolarizing, VariationalBound };

const char* entropy_method_name(EntropyMethod m);
EntropyMethod parse_entropy_method(const std::string& name);

struct EntropyEstimate {
  double value = 0.0;  // nats
  EntropyMethod method = EntropyMethod::Exact;
  int n = 0;
  int n_a = 0;
  long evaluations = 0;
  /// Variational bound only: optimizer budget ran out.
  bool budget_exhausted = false;
};

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

EntropyEstimate exact_entropy(const DensityMatrix& rho);

/// (n / n_a) * S(ansatz instantiated on n_a sites with the same parameters).
EntropyEstimate scaled_subsystem_entropy(const AnsatzSpec& spec, const ParameterVector& params, int n, int n_a);

/// -n[(1 - L/2) ln(1 - L/2) + (L/2) ln(L/2)] with L = 1 - (1 - lambda)^m.
EntropyEstimate analytic_depolarizing_entropy(double lambda, int m, int n);
/// Same closed form with L = 1 - prod_j (1 - lambda_j).
double analytic_depolarizing_entropy(std::span<const double> layer_lambdas, int n);

/// Entropy of alpha |psi><psi| + (1 - alpha) I / 2^n.
double model_state_entropy(double alpha, int n);

struct EntropyErrorModel {
  int n = 0;
  int n_a = 0;
  double lambda = 0.0;
  int m = 0;
  double alpha() const;
};

struct EntropyError {
  double absolute = 0.0;
  double relative = 0.0;
};

/// absolute = e^{-n_a lambda m} n ln 2, relative = e^{-n_a lambda m}.
EntropyError entropy_error_model(const EntropyErrorModel& model);

/// Parameterized disentangler: gates applied in order, one angle each.
struct Disentangler {
  std::vector<PauliString> gates;
  std::vector<double> initial_angles;
};

/// Inverse of the unitary part of an ansatz, one gate per placed term,
/// initialized at the inverting angles.
Disentangler disentangler_from_ansatz(const AnsatzSpec& spec, const ParameterVector& params);
/// `depth` layers of X, Y, Z rotations on every site followed by XX, YY, ZZ,
/// ZX, XZ on every ring bond. Angles start at small fixed pseudo-random values.
Disentangler generic_disentangler(int n, int depth);

struct VariationalOptions {
  OptimizerOptions optimizer;
  long max_evaluations = 2000;
};

/// Minimizes sum_j S(part_j of U rho U^dagger) over the disentangler angles.
/// Never below S(rho) by subadditivity.
EntropyEstimate variational_entropy_bound(const DensityMatrix& rho, const std::vector<std::vector<int>>& partition,
                                          const Disentangler& family, const VariationalOptions& options = {});

/// (1 - |s_a - s_b|) (beta * energy - s_a).
double regularized_cost(double energy, double s_a, double s_b, double beta);

}  // namespace thermalizer
