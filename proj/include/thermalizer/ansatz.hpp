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

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thermalizer/qcore.hpp"

namespace thermalizer {

/// Translation-invariant generator: each local Pauli pattern is placed on
/// sites k, k+1, ... (mod n) for every k and summed with its coefficient.
struct GeneratorTemplate {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  /// One angle per placed term instead of one shared angle. Breaks size
  /// parametricity.
  bool per_site = false;
};

enum class ChannelFamily {
  Identity,
  Bitflip,
  Phaseflip,
  Depolarizing,
  IsingProjector,
  TfimJump,
  HeisenbergPair,
};

const char* channel_family_name(ChannelFamily f);
ChannelFamily parse_channel_family(const std::string& name);
/// Sites per placement: 1 for single-qubit families, 2 for bond families.
int channel_family_arity(ChannelFamily f);
/// Trainable values per placement group: p for Pauli and projector
/// channels, (p, q) for the TFIM jump, (kappa_f, kappa_af) for pair jumps.
int channel_family_parameters(ChannelFamily f);

struct ParameterBounds {
  double lower = 0.0;
  double upper = 1.0;
};

/// Channel applied on every site (single-qubit families) or on every bond
/// (k, k+1 mod n), in ascending k.
struct ChannelTemplate {
  ChannelFamily family = ChannelFamily::Identity;
  /// One bound per family parameter; empty means family defaults.
  std::vector<ParameterBounds> bounds;
  /// Separate parameters per placement instead of one shared set per layer.
  bool per_site = false;
  /// TFIM jump only: use sqrt(p)(X - qY).
  bool hadamard_frame = false;
  /// Lindblad families evolve for this time.
  double time = 1.0;

  std::vector<ParameterBounds> resolved_bounds() const;
};

struct AnsatzSpec {
  int n = 6;
  int m = 1;
  /// Applied in this order inside every layer, each with its own angle(s).
  std::vector<GeneratorTemplate> generators;
  /// Applied after the unitary part of every layer.
  std::vector<ChannelTemplate> channels;

  bool size_parametric() const;
  /// Same blueprint on a different register size.
  AnsatzSpec resized(int new_n) const;
  int theta_per_layer() const;
  int lambda_per_layer() const;
  int theta_count() const { return m * theta_per_layer(); }
  int lambda_count() const { return m * lambda_per_layer(); }
  std::vector<ParameterBounds> lambda_bounds() const;
};

struct ParameterVector {
  std::vector<double> theta;
  std::vector<double> lambda;
};

/// Generator templates used across the experiments.
GeneratorTemplate mixing_generator(bool per_site = false);          // -sum X
GeneratorTemplate coupling_generator(bool per_site = false);        // -sum ZZ
GeneratorTemplate longitudinal_generator(bool per_site = false);    // -sum Z
GeneratorTemplate ising_problem_generator(double J, double g);      // -J sum ZZ - g sum Z
GeneratorTemplate heisenberg_problem_generator(double sign);        // sign * sum (XX+YY+ZZ)

/// Placed Pauli terms of one generator on n sites.
std::vector<PauliString> place_generator(const GeneratorTemplate& gen, int n);

/// Precomputed evaluator for one spec.
class CompiledAnsatz {
 public:
  explicit CompiledAnsatz(AnsatzSpec spec);
  ~CompiledAnsatz();
  CompiledAnsatz(CompiledAnsatz&&) noexcept;
  CompiledAnsatz& operator=(CompiledAnsatz&&) noexcept;

  const AnsatzSpec& spec() const;
  /// Output of the circuit on |+>^n; lambda entries are clamped to bounds.
  DensityMatrix evaluate(const ParameterVector& params) const;
  /// Pure-state evaluation; requires every channel to be Identity.
  StateVector evaluate_pure(const ParameterVector& params) const;
  bool all_channels_identity() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DensityMatrix evaluate_ansatz(const AnsatzSpec& spec, const ParameterVector& params);

/// Squashing map lambda = lo + (hi - lo) * sigmoid(x) and its inverse.
double squash(double x, const ParameterBounds& b);
double unsquash(double value, const ParameterBounds& b);

/// Raw optimizer vector (theta then unsquashed lambda) <-> parameters.
ParameterVector params_from_raw(const AnsatzSpec& spec, std::span<const double> raw);
std::vector<double> raw_from_params(const AnsatzSpec& spec, const ParameterVector& params);
/// Lambda at mid-bound.
std::vector<double> midpoint_lambda(const AnsatzSpec& spec);

}  // namespace thermalizer
