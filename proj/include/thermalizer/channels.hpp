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

#include <array>
#include <span>
#include <vector>

#include "thermalizer/qcore.hpp"

namespace thermalizer {

/// CPTP map in operator-sum form on `arity` qubits.
class KrausChannel {
 public:
  /// Validates shapes and completeness (sum K^dagger K = I to 1e-10).
  explicit KrausChannel(std::vector<ComplexOperator> ops);
  /// Keeps the operators without the completeness check (small-time sets).
  static KrausChannel approximate(std::vector<ComplexOperator> ops);

  const std::vector<ComplexOperator>& kraus_ops() const { return ops_; }
  int arity() const { return arity_; }
  /// max-norm of sum K^dagger K - I.
  double completeness_defect() const;

 private:
  struct Unchecked {};
  KrausChannel(std::vector<ComplexOperator> ops, Unchecked);
  std::vector<ComplexOperator> ops_;
  int arity_ = 0;
};

struct LindbladGenerator {
  ComplexOperator hamiltonian;  // may be empty (treated as zero)
  std::vector<ComplexOperator> jumps;

  int arity() const;
  /// Checks matching dimensions; throws InvalidInput.
  void validate() const;
};

enum class PauliChannelKind { Bitflip, Phaseflip, Depolarizing };

/// bitflip {sqrt(1-p) I, sqrt(p) X}, phaseflip {sqrt(1-p) I, sqrt(p) Z},
/// depolarizing (1-p) rho + p I/2. Exactly-zero Kraus operators are dropped.
KrausChannel pauli_channel(PauliChannelKind kind, double p);
KrausChannel identity_channel(int arity);
KrausChannel unitary_channel(const ComplexOperator& u);

/// {sqrt(1-p) I, sqrt(p) P, sqrt(p) T} with P projecting on |00>,|11> and T
/// moving |01> -> |00>, |10> -> |11>.
KrausChannel ising_projector_channel(double p);

/// Applies the channel on the listed sites of the register.
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho,
                            std::span<const int> sites);

/// Column-stacking vectorization: vec(A)[i + d j] = A(i, j).
Eigen::VectorXcd vectorize(const ComplexOperator& a);
ComplexOperator unvectorize(const Eigen::VectorXcd& v);

/// sum conj(K) (x) K.
ComplexOperator channel_superoperator(const KrausChannel& channel);
/// Superoperator of the Lindblad generator (not exponentiated).
ComplexOperator lindblad_superoperator(const LindbladGenerator& gen);
/// exp(t L) for a generator of arity <= 2.
ComplexOperator lindblad_propagator(const LindbladGenerator& gen, double t);
DensityMatrix lindblad_evolve(const LindbladGenerator& gen, const DensityMatrix& rho, double t,
                              std::span<const int> sites);

/// Choi matrix sum_ij |i><j| (x) E(|i><j|) built from a superoperator.
ComplexOperator choi_matrix(const ComplexOperator& superop);
double choi_min_eigenvalue(const ComplexOperator& superop);
/// Kraus set recovered from the Choi eigendecomposition; operators with
/// weight below `cutoff` are dropped.
KrausChannel kraus_from_superoperator(const ComplexOperator& superop, double cutoff = 1e-14);

/// Jump sqrt(p)(Z + qY); with `hadamard_frame` the conjugated form
/// sqrt(p)(X - qY).
LindbladGenerator tfim_jump(double p, double q, bool hadamard_frame = false);

/// L0 = sqrt(kf)|11><10| + sqrt(kaf)|01><00|,
/// L1 = sqrt(kf)|00><01| + sqrt(kaf)|10><11|.
LindbladGenerator heisenberg_pair_jumps(double kappa_f, double kappa_af);

struct EffectiveRates {
  Complex sqrt_kappa_f;
  Complex sqrt_kappa_af;
  double kappa_f = 0.0;   // |sqrt_kappa_f|^2
  double kappa_af = 0.0;  // |sqrt_kappa_af|^2
  /// Energy shifts of |00> and |10>.
  std::array<double, 2> h_eff_diag{};
};

/// Closed-form rates of the driven-oscillator construction. Throws
/// SingularParameter at either denominator pole.
EffectiveRates effective_rates_from_physical(double g, double omega, Complex delta_tilde,
                                             double Delta, double kappa);

/// {I + dt H_nh, sqrt(dt) L_j} with H_nh = -iH - 1/2 sum L^dagger L. Complete
/// only to O(dt^2).
KrausChannel small_time_kraus(const LindbladGenerator& gen, double dt);

}  // namespace thermalizer
