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

#include <functional>
#include <string>
#include <vector>

namespace thermalizer {

using Objective = std::function<double(const std::vector<double>&)>;

enum class OptimizerKind { Lbfgs, NelderMead };

const char* optimizer_name(OptimizerKind k);
OptimizerKind parse_optimizer(const std::string& name);

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::Lbfgs;
  int max_iters = 500;
  /// Stop when |f_{k-window} - f_k| <= ftol * max(1, |f_k|).
  double ftol = 1e-8;
  int window = 5;
  /// Central-difference step.
  double fd_step = 1e-4;
  int history = 10;
  /// Hard cap on objective calls; 0 means unlimited.
  long max_evaluations = 0;
};

struct OptimizeResult {
  std::vector<double> x;
  double fx = 0.0;
  /// Best value after each iteration, starting with the initial point.
  std::vector<double> trace;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Central finite-difference gradient.
std::vector<double> finite_difference_gradient(const Objective& f, const std::vector<double>& x, double step);

OptimizeResult minimize_lbfgs(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);
OptimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);
OptimizeResult minimize(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);

}  // namespace thermalizer
