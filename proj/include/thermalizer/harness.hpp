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
#include <stdexcept>
#include <string>
#include <vector>

#include "thermalizer/ansatz.hpp"
#include "thermalizer/models.hpp"
#include "thermalizer/qoft.hpp"
#include "thermalizer/vqt.hpp"

namespace thermalizer {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kDefaultMaxQubits = 12;

enum class Experiment { Gibbs, Train, SweepBeta, EntropyBench, GradVariance, DepthStudy, SymmetryCheck, QoftBench };

const char* experiment_name(Experiment e);
/// Throws ConfigError for unknown names.
Experiment parse_experiment(const std::string& name);
const std::vector<std::string>& experiment_names();

/// Malformed or out-of-schema configuration. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register larger than the qubit guard allows. Exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EntropyBenchConfig {
  int n = 10;
  int m = 10;
  double lambda = 0.05;
  std::vector<int> n_a = {3, 4, 5, 6, 7, 8};
};

struct GradVarianceConfig {
  std::vector<int> n_range = {4, 5, 6, 7, 8, 9, 10};
  int layers = 40;
  int samples = 100;
  std::string observable = "ZZ";
  int parameter_index = 0;
  /// One angle per placed rotation.
  bool per_site = true;
};

struct DepthStudyConfig {
  std::vector<int> m_range = {1, 2, 3, 4};
  /// "symmetric" (ZZ, X) and/or "nonsymmetric" (ZZ, X, Z); channels come
  /// from the ansatz section.
  std::vector<std::string> families = {"symmetric", "nonsymmetric"};
};

struct QoftBenchConfig {
  int pairs = 20;
  int qubits = 2;
  /// beta |H|
  double beta_norm = 0.05;
  double omega_min = -5.0;
  double omega_max = 5.0;
  int points = 101;
  OddTermForm odd_term = OddTermForm::Summed;
  /// Integrated-bound slope fit over this beta range (|H| = |A| = 1).
  double slope_beta_min = 1e-3;
  double slope_beta_max = 1e-1;
  int slope_points = 9;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Gibbs;
  SpinModel model;
  std::vector<double> beta_grid = {1.0};
  AnsatzSpec ansatz;
  TrainConfig training;
  std::vector<std::uint64_t> seeds = {1};
  std::string output_path = "results";
  EntropyBenchConfig entropy_bench;
  GradVarianceConfig grad_variance;
  DepthStudyConfig depth_study;
  QoftBenchConfig qoft_bench;
};

/// Parses and validates a JSON document. Unknown keys, wrong types and
/// out-of-domain values throw ConfigError naming the field (and line/column
/// for syntax errors). Missing keys take their defaults.
ExperimentConfig validate_config(const std::string& raw);

/// Canonical JSON of the fully populated config (sorted keys, compact).
std::string canonical_config(const ExperimentConfig& config);
/// 16 hex digits of FNV-1a 64 over canonical_config.
std::string config_hash(const ExperimentConfig& config);

/// Reduced sizes for CI.
void apply_quick(ExperimentConfig& config);
void apply_seed_override(ExperimentConfig& config, std::uint64_t seed);

/// THERMALIZER_MAX_QUBITS or 12.
int max_qubits();
/// Throws ResourceLimitError when any register exceeds max_qubits().
void check_resources(const ExperimentConfig& config);

struct ExperimentRecord {
  std::string experiment;
  std::string config_hash;
  std::string artifact_version = kArtifactVersion;
  std::vector<std::string> columns;
  /// Preformatted cells, emitted in this order.
  std::vector<std::vector<std::string>> rows;
  /// Experiment-specific summary as a JSON object string.
  std::string summary = "{}";
  /// False when an invariant the experiment checks was violated.
  bool ok = true;
};

ExperimentRecord run(const ExperimentConfig& config);

std::string record_csv(const ExperimentRecord& record);
std::string record_json(const ExperimentRecord& record, const ExperimentConfig& config);
/// Writes `<dir>/<experiment>-<hash>.csv` and `.json`; returns the stem.
std::string write_record(const ExperimentRecord& record, const ExperimentConfig& config, const std::string& dir);

}  // namespace thermalizer
