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
#include <cstdint>
#include <span>
#include <vector>

#include "thermalizer/qcore.hpp"

namespace thermalizer {

/// Index bookkeeping for an operator acting on a subset of register sites.
///
/// `offsets[l]` is the register index contribution of local basis state `l`
/// (first listed site = most significant local bit). `rests` enumerates the
/// register indices whose bits on the listed sites are all zero.
struct LocalLayout {
  int n = 0;
  std::vector<int> sites;
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint64_t> rests;

  LocalLayout(int register_size, std::span<const int> local_sites);
  int arity() const { return static_cast<int>(sites.size()); }
};

/// rho <- (op (x) I) rho (op (x) I)^dagger, op acting on `layout.sites`.
void conjugate_local(ComplexOperator& rho, const ComplexOperator& op, const LocalLayout& layout);

/// Applies a local superoperator (column-stacking convention) in place.
void apply_local_superoperator(ComplexOperator& rho, const ComplexOperator& superop,
                               const LocalLayout& layout);

/// psi <- (op (x) I) psi.
void apply_local(StateVector& psi, const ComplexOperator& op, const LocalLayout& layout);

/// Embeds a local operator into the full register (dense, for tests and
/// small systems).
ComplexOperator embed_operator(const ComplexOperator& op, std::span<const int> sites, int n);

/// rho <- e^{-i angle P} rho e^{+i angle P} for a Pauli string P (coefficient
/// ignored). `scratch` must have rho's shape.
void apply_pauli_rotation(ComplexOperator& rho, const PauliString& p, double angle,
                          ComplexOperator& scratch);
void apply_pauli_rotation(StateVector& psi, const PauliString& p, double angle);

/// rho_ab <- rho_ab * u_a * conj(u_b) for a diagonal unitary with entries u.
void apply_diagonal_unitary(ComplexOperator& rho, const Eigen::VectorXcd& u);

/// rho <- w0 rho + wx X rho X + wy Y rho Y + wz Z rho Z on one site of an
/// n-site register.
void apply_pauli_mixture(ComplexOperator& rho, int n, int site, const std::array<double, 4>& w);

/// P psi for a Pauli string P including its coefficient.
StateVector apply_pauli(const PauliString& p, const StateVector& psi);

}  // namespace thermalizer
