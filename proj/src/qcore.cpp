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

#include "thermalizer/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

double relative_scale(const ComplexOperator& a) {
  return std::max(1.0, a.cwiseAbs().maxCoeff());
}

ComplexOperator hermitian_part(const ComplexOperator& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

int qubit_count(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    std::ostringstream os;
    os << "dimension " << dim << " is not a power of two";
    throw InvalidInput(os.str());
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

ComplexOperator identity_operator(int n) {
  if (n < 0 || n > 30) throw InvalidInput("qubit count out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  return ComplexOperator::Identity(d, d);
}

ComplexOperator pauli_matrix(char label) {
  using namespace std::complex_literals;
  ComplexOperator p(2, 2);
  switch (label) {
    case 'I':
      p << 1, 0, 0, 1;
      break;
    case 'X':
      p << 0, 1, 1, 0;
      break;
    case 'Y':
      p << 0, -1i, 1i, 0;
      break;
    case 'Z':
      p << 1, 0, 0, -1;
      break;
    default:
      throw InvalidInput(std::string("unknown Pauli label '") + label + "'");
  }
  return p;
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b) {
  ComplexOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexOperator tensor_product(std::span<const ComplexOperator> factors) {
  ComplexOperator out = ComplexOperator::Identity(1, 1);
  for (const auto& f : factors) out = tensor_product(out, f);
  return out;
}

double hermiticity_defect(const ComplexOperator& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  return hermiticity_defect(a) <= tol * relative_scale(a);
}

double spectral_norm(const ComplexOperator& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 256 && a.cols() <= 256) {
    Eigen::JacobiSVD<ComplexOperator> svd(a);
    return svd.singularValues()(0);
  }
  // Power iteration on a^dagger a for the large superoperators used by the
  // symmetry checks.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = std::sqrt(nw);
    v = w / nw;
    if (std::abs(next - sigma) <= 1e-14 * std::max(1.0, next)) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexOperator m, TrustedTag) : m_(hermitian_part(m)) {}

DensityMatrix::DensityMatrix(ComplexOperator m) {
  if (m.rows() != m.cols()) throw InvalidInput("density matrix must be square");
  qubit_count(m.rows());
  if (!is_hermitian(m)) throw InvalidInput("density matrix is not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw InvalidInput(os.str());
  }
  m_ = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -kNegativeEigenTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << es.eigenvalues()(0);
    throw InvalidInput(os.str());
  }
}

DensityMatrix DensityMatrix::trusted(ComplexOperator m) {
  return DensityMatrix(std::move(m), TrustedTag{});
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidInput("zero state vector");
  const StateVector v = psi / norm;
  return DensityMatrix(v * v.adjoint(), TrustedTag{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const ComplexOperator id = identity_operator(n);
  return DensityMatrix(id / static_cast<double>(id.rows()), TrustedTag{});
}

DensityMatrix DensityMatrix::basis_state(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  if (n == 0 || n > 30) throw InvalidInput("basis state needs 1..30 bits");
  Eigen::Index index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw InvalidInput("basis state bits must be 0 or 1");
    index = (index << 1) | (b == '1' ? 1 : 0);
  }
  StateVector psi = StateVector::Zero(Eigen::Index{1} << n);
  psi(index) = 1.0;
  return pure(psi);
}

double DensityMatrix::purity() const {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return m_.squaredNorm();
}

// ---------------------------------------------------------------------------
// Partial trace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.qubits();
  if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw InvalidInput("partial_trace: duplicate site index");
  }
  if (kept.front() < 0 || kept.back() >= n) {
    throw InvalidInput("partial_trace: site index out of range");
  }
  std::vector<int> traced;
  for (int s = 0; s < n; ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }
  const int k = static_cast<int>(kept.size());
  const int t = static_cast<int>(traced.size());
  auto spread = [n](const std::vector<int>& sites, std::uint64_t local) {
    std::uint64_t full = 0;
    const int m = static_cast<int>(sites.size());
    for (int i = 0; i < m; ++i) {
      if ((local >> (m - 1 - i)) & 1U) full |= std::uint64_t{1} << (n - 1 - sites[i]);
    }
    return full;
  };
  const std::uint64_t dk = std::uint64_t{1} << k;
  const std::uint64_t dt = std::uint64_t{1} << t;
  std::vector<std::uint64_t> keep_off(dk), trace_off(dt);
  for (std::uint64_t i = 0; i < dk; ++i) keep_off[i] = spread(kept, i);
  for (std::uint64_t i = 0; i < dt; ++i) trace_off[i] = spread(traced, i);

  const ComplexOperator& m = rho.matrix();
  ComplexOperator out = ComplexOperator::Zero(static_cast<Eigen::Index>(dk),
                                              static_cast<Eigen::Index>(dk));
  for (std::uint64_t b = 0; b < dk; ++b) {
    for (std::uint64_t a = 0; a < dk; ++a) {
      Complex acc = 0.0;
      for (std::uint64_t e = 0; e < dt; ++e) {
        acc += m(static_cast<Eigen::Index>(keep_off[a] | trace_off[e]),
                 static_cast<Eigen::Index>(keep_off[b] | trace_off[e]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

// ---------------------------------------------------------------------------
// Hermitian matrix functions

HermitianEigen hermitian_eigen(const ComplexOperator& a) {
  if (!is_hermitian(a)) throw InvalidInput("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw InvalidInput("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexOperator hermitian_function(const HermitianEigen& eig,
                                   const std::function<double(double)>& f) {
  Eigen::VectorXcd fd(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) fd(i) = f(eig.values(i));
  return eig.vectors * fd.asDiagonal() * eig.vectors.adjoint();
}

ComplexOperator hermitian_function(const ComplexOperator& a,
                                   const std::function<double(double)>& f) {
  return hermitian_function(hermitian_eigen(a), f);
}

double floor_eigenvalue(double x) {
  if (x < -kNegativeEigenTol) {
    std::ostringstream os;
    os << "eigenvalue " << x << " is below the PSD tolerance";
    throw InvalidInput(os.str());
  }
  return std::max(x, kEigenFloor);
}

ComplexOperator hermitian_log(const ComplexOperator& a) {
  return hermitian_function(a, [](double x) { return std::log(floor_eigenvalue(x)); });
}

ComplexOperator psd_sqrt(const ComplexOperator& a) {
  return hermitian_function(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double spectrum_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double x : eigenvalues) {
    const double p = floor_eigenvalue(x);
    if (p > kEigenFloor) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(rho.matrix(), Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  return spectrum_entropy(std::span<const double>(ev.data(), static_cast<size_t>(ev.size())));
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("uhlmann_fidelity: dimension mismatch");
  const ComplexOperator sr = psd_sqrt(rho.matrix());
  const ComplexOperator inner = hermitian_part(sr * sigma.matrix() * sr);
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(inner, Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    tr += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

double expectation(const DensityMatrix& rho, const ComplexOperator& obs) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
    throw InvalidInput("expectation: dimension mismatch");
  }
  if (!is_hermitian(obs)) throw InvalidInput("expectation: observable is not Hermitian");
  // Tr[obs rho] = sum_ij obs_ij rho_ji
  return (obs.cwiseProduct(rho.matrix().transpose())).sum().real();
}

// ---------------------------------------------------------------------------
// Pauli strings

ComplexOperator PauliString::to_matrix() const {
  if (ops.empty()) throw InvalidInput("empty Pauli string");
  std::vector<ComplexOperator> factors;
  factors.reserve(ops.size());
  for (char c : ops) factors.push_back(pauli_matrix(c));
  return coefficient * tensor_product(factors);
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  const int n = size();
  for (int s = 0; s < n; ++s) {
    if (ops[s] == 'X' || ops[s] == 'Y') mask |= std::uint64_t{1} << (n - 1 - s);
  }
  return mask;
}

std::uint64_t PauliString::phase_mask() const {
  std::uint64_t mask = 0;
  const int n = size();
  for (int s = 0; s < n; ++s) {
    if (ops[s] == 'Z' || ops[s] == 'Y') mask |= std::uint64_t{1} << (n - 1 - s);
  }
  return mask;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(ops.begin(), ops.end(), 'Y'));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw InvalidInput("Pauli strings of different length");
  const int anti = std::popcount(flip_mask() & other.phase_mask()) +
                   std::popcount(phase_mask() & other.flip_mask());
  return anti % 2 == 0;
}

ComplexOperator PauliSum::to_matrix() const {
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexOperator out = ComplexOperator::Zero(d, d);
  for (const auto& t : terms) {
    if (t.size() != n) throw InvalidInput("PauliSum term has wrong length");
    out += t.to_matrix();
  }
  return out;
}

bool PauliSum::is_diagonal() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const PauliString& t) { return t.is_diagonal(); });
}

bool PauliSum::is_commuting() const {
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (!terms[i].commutes_with(terms[j])) return false;
    }
  }
  return true;
}

RealVector PauliSum::diagonal() const {
  if (!is_diagonal()) throw InvalidInput("PauliSum is not diagonal");
  const Eigen::Index d = Eigen::Index{1} << n;
  RealVector diag = RealVector::Zero(d);
  for (const auto& t : terms) {
    const std::uint64_t mask = t.phase_mask();
    for (Eigen::Index i = 0; i < d; ++i) {
      const bool odd = std::popcount(static_cast<std::uint64_t>(i) & mask) & 1;
      diag(i) += odd ? -t.coefficient : t.coefficient;
    }
  }
  return diag;
}

}  // namespace thermalizer
