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

#include <string>
#include <vector>

#include "thermalizer/channels.hpp"
#include "thermalizer/qcore.hpp"

namespace thermalizer {

/// Finite group given by a faithful unitary representation. The
/// multiplication table is derived from the matrices.
class SymmetryGroup {
 public:
  /// Elements must be unitary, closed under multiplication and contain I.
  static SymmetryGroup from_elements(std::vector<ComplexOperator> elements);
  /// Closure of the generators (identity prepended).
  static SymmetryGroup generated_by(const std::vector<ComplexOperator>& generators,
                                    std::size_t max_order = 4096);

  const std::vector<ComplexOperator>& elements() const { return elements_; }
  const ComplexOperator& element(int g) const { return elements_[static_cast<std::size_t>(g)]; }
  int order() const { return static_cast<int>(elements_.size()); }
  int identity_index() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const;
  const std::vector<std::vector<int>>& multiplication_table() const { return table_; }
  bool is_abelian() const;
  int qubits() const { return qubit_count(elements_.front().rows()); }

 private:
  std::vector<ComplexOperator> elements_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
};

struct CharacterTable {
  std::vector<std::string> irreps;
  /// characters[alpha][g]
  std::vector<std::vector<Complex>> characters;

  int size() const { return static_cast<int>(characters.size()); }
};

/// Characters of an abelian group, trivial irrep first, remaining irreps
/// ordered by their phase pattern. Throws UnsupportedInput for non-abelian
/// groups.
CharacterTable character_table(const SymmetryGroup& group);

/// Checks shape, row orthogonality (1e-10) and that each row is a
/// one-dimensional representation of the group. Throws InvalidInput.
void validate_character_table(const SymmetryGroup& group, const CharacterTable& table);

/// Pi_alpha = (1/|G|) sum_g chi_alpha(g) R_g.
std::vector<ComplexOperator> sector_projectors(const SymmetryGroup& group, const CharacterTable& table);

/// p_alpha = Re Tr[Pi_alpha rho].
std::vector<double> sector_populations(const DensityMatrix& rho,
                                       const std::vector<ComplexOperator>& projectors);

struct WeakSymmetryResult {
  bool symmetric = false;
  /// max_g of the spectral norm of S_g S_E S_g^dagger - S_E.
  double residual = 0.0;
};

struct SymmetryReport {
  bool weakly_symmetric = false;
  bool strongly_symmetric = false;
  /// theta(g) in [0, 2pi), one per group element; empty unless strong.
  std::vector<double> phases;
  double weak_residual = 0.0;
  double strong_residual = 0.0;
  /// Lindblad checks only: whether the small-time Kraus set gives the same
  /// strong verdict.
  bool kraus_cross_check = true;
  std::string note;
};

inline constexpr double kSymmetryTol = 1e-8;

/// Spectral norm of a superoperator difference; exact SVD for small
/// matrices, power iteration on A^dagger A above 256.
double superoperator_norm(const ComplexOperator& a);

WeakSymmetryResult check_weak_symmetry(const KrausChannel& channel, const SymmetryGroup& group,
                                       double tol = kSymmetryTol);
SymmetryReport check_strong_symmetry(const KrausChannel& channel, const SymmetryGroup& group,
                                     double tol = kSymmetryTol);
SymmetryReport check_lindblad_symmetry(const LindbladGenerator& gen, const SymmetryGroup& group,
                                       double tol = kSymmetryTol);

/// perm[alpha] = alpha~ with e^{i theta(g)} chi_alpha(g) = chi_alpha~(g).
/// Throws PreconditionError when the channel is not strongly symmetric.
std::vector<int> sector_permutation(const KrausChannel& channel, const SymmetryGroup& group,
                                    const CharacterTable& table, double tol = kSymmetryTol);

}  // namespace thermalizer
