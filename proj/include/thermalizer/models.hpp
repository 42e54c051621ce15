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

#include <vector>

#include "thermalizer/qcore.hpp"

namespace thermalizer {

enum class ModelKind { Ising, TFIM, Heisenberg };

/// Periodic spin ring. Ising: -J sum ZZ - g sum Z. TFIM: -J sum ZZ - g sum X.
/// Heisenberg: sign * sum (XX + YY + ZZ) - delta sum X with sign = -1 by
/// default (`heisenberg_plus` selects +1).
struct SpinModel {
  ModelKind kind = ModelKind::TFIM;
  int n = 6;
  double J = 1.0;
  double g = 1.0;
  double delta = 1.0;
  bool heisenberg_plus = false;
};

const char* model_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Pauli expansion of the model; throws InvalidInput for n < 3.
PauliSum model_terms(const SpinModel& model);
ComplexOperator build_hamiltonian(const SpinModel& model);

/// Unitaries generating the model's abelian symmetry group: the global flip
/// X^n for TFIM and Heisenberg, one-site translation for Ising.
std::vector<ComplexOperator> symmetry_generators(const SpinModel& model);

/// Cyclic shift by one site (site s -> s + 1 mod n).
ComplexOperator translation_operator(int n);

struct GibbsTarget {
  ComplexOperator hamiltonian;
  double beta = 0.0;
  double partition_function = 1.0;
  /// ln Z, stable for large beta.
  double log_partition = 0.0;
  RealVector energies;
  DensityMatrix state = DensityMatrix::maximally_mixed(1);
};

GibbsTarget gibbs_state(const ComplexOperator& h, double beta);

/// H_M = -sum X_k.
ComplexOperator mixing_hamiltonian(int n);
PauliSum mixing_terms(int n);
/// |+>^n
StateVector plus_state(int n);
DensityMatrix initial_state(int n);

/// beta <H> - S, the dimensionless free energy.
double free_energy(const DensityMatrix& rho, const ComplexOperator& h, double beta,
                   double entropy_value);

}  // namespace thermalizer
