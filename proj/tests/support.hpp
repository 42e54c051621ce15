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

#include <random>

#include "thermalizer/qcore.hpp"

namespace thermalizer::testing {

inline ComplexOperator random_matrix(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> nd;
  ComplexOperator m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(nd(rng), nd(rng));
  }
  return m;
}

inline ComplexOperator random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  const ComplexOperator m = random_matrix(rng, d);
  return 0.5 * (m + m.adjoint());
}

inline StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  StateVector v(Eigen::Index{1} << n);
  for (auto& x : v) x = Complex(nd(rng), nd(rng));
  return v / v.norm();
}

/// G G^dagger / Tr, full rank with probability one.
inline DensityMatrix random_density(std::mt19937_64& rng, int n) {
  const ComplexOperator g = random_matrix(rng, Eigen::Index{1} << n);
  ComplexOperator rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

/// Random unitary from the QR factor of a Gaussian matrix.
inline ComplexOperator random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<ComplexOperator> qr(random_matrix(rng, d));
  return qr.householderQ() * ComplexOperator::Identity(d, d);
}

/// exp(A) by scaling and squaring a truncated Taylor series.
inline ComplexOperator taylor_exp(const ComplexOperator& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const ComplexOperator s = a / std::pow(2.0, squarings);
  ComplexOperator term = ComplexOperator::Identity(a.rows(), a.cols());
  ComplexOperator sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (term * s / static_cast<double>(k)).eval();
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
  return sum;
}

/// Maximum elementwise distance.
inline double max_diff(const ComplexOperator& a, const ComplexOperator& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Kraus operator-sum applied to the full register.
inline ComplexOperator apply_kraus(const std::vector<ComplexOperator>& ops, const ComplexOperator& rho) {
  ComplexOperator out = ComplexOperator::Zero(rho.rows(), rho.cols());
  for (const auto& k : ops) out += k * rho * k.adjoint();
  return out;
}

}  // namespace thermalizer::testing
