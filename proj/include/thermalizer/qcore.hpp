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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace thermalizer {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest register the dense routines are meant for.
inline constexpr int kMaxQubits = 12;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
/// Eigenvalues below -kNegativeEigenTol mean the state is not PSD.
inline constexpr double kNegativeEigenTol = 1e-10;
/// Eigenvalues in [-kNegativeEigenTol, kEigenFloor] are clipped to kEigenFloor
/// before any logarithm is taken.
inline constexpr double kEigenFloor = 1e-12;

/// Number of qubits n with 2^n == dim. Throws InvalidInput otherwise.
int qubit_count(Eigen::Index dim);

ComplexOperator identity_operator(int n);

/// Single-qubit Pauli matrix for label I, X, Y or Z.
ComplexOperator pauli_matrix(char label);

/// Kronecker product; `a` occupies the more significant qubits.
ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator tensor_product(std::span<const ComplexOperator> factors);

/// Max-norm distance to the adjoint.
double hermiticity_defect(const ComplexOperator& a);
bool is_hermitian(const ComplexOperator& a, double tol = kHermitianTol);

/// Largest singular value.
double spectral_norm(const ComplexOperator& a);

/// Positive semidefinite, unit-trace operator on a qubit register.
///
/// Construction validates Hermiticity (1e-12, relative to the largest entry),
/// unit trace (1e-10) and the minimum eigenvalue (>= -1e-10). The stored
/// matrix is exactly Hermitian: the anti-Hermitian residue is projected out.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexOperator m);

  /// Skips the eigenvalue check but still symmetrizes. For hot paths whose
  /// output is PSD by construction (channel application, unitary conjugation).
  static DensityMatrix trusted(ComplexOperator m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n);
  /// |b_0 b_1 ... b_{n-1}><...| with b_0 on site 0.
  static DensityMatrix basis_state(std::string_view bits);

  const ComplexOperator& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int qubits() const { return qubit_count(m_.rows()); }
  double purity() const;

 private:
  struct TrustedTag {};
  DensityMatrix(ComplexOperator m, TrustedTag);

  ComplexOperator m_;
};

/// Reduced state on the sites in `keep` (0-based, site 0 most significant).
/// The kept sites retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

struct HermitianEigen {
  RealVector values;         // ascending
  ComplexOperator vectors;   // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian operator. Throws InvalidInput when the
/// operator is not Hermitian.
HermitianEigen hermitian_eigen(const ComplexOperator& a);

/// V f(D) V^dagger for Hermitian `a`.
ComplexOperator hermitian_function(const ComplexOperator& a,
                                   const std::function<double(double)>& f);
ComplexOperator hermitian_function(const HermitianEigen& eig,
                                   const std::function<double(double)>& f);

/// Applies the eigenvalue floor policy: throws InvalidInput for values below
/// -kNegativeEigenTol, returns max(x, kEigenFloor) otherwise.
double floor_eigenvalue(double x);

/// Natural-log matrix logarithm under the eigenvalue floor policy.
ComplexOperator hermitian_log(const ComplexOperator& a);
/// Square root of a PSD operator; small negative eigenvalues are clamped to 0.
ComplexOperator psd_sqrt(const ComplexOperator& a);

/// -sum p ln p over a spectrum, in nats. Entries at or below the floor
/// contribute their x ln x -> 0 limit.
double spectrum_entropy(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Re Tr[obs rho]. `obs` must be Hermitian with matching dimension.
double expectation(const DensityMatrix& rho, const ComplexOperator& obs);

/// Tensor product of single-site Paulis scaled by a real coefficient.
struct PauliString {
  std::string ops;  // one of I, X, Y, Z per site
  double coefficient = 1.0;

  int size() const { return static_cast<int>(ops.size()); }
  ComplexOperator to_matrix() const;

  /// Bit masks over the computational-basis index (site 0 is the most
  /// significant bit). `flip` marks X/Y sites, `phase` marks Y/Z sites.
  std::uint64_t flip_mask() const;
  std::uint64_t phase_mask() const;
  int y_count() const;
  bool is_diagonal() const { return flip_mask() == 0; }
  bool commutes_with(const PauliString& other) const;
};

/// Sum of Pauli strings over one register size.
struct PauliSum {
  int n = 0;
  std::vector<PauliString> terms;

  ComplexOperator to_matrix() const;
  bool is_diagonal() const;
  bool is_commuting() const;
  /// Diagonal of a diagonal sum, without forming the matrix.
  RealVector diagonal() const;
};

}  // namespace thermalizer
