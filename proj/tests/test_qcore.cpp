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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/qcore.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;
using Catch::Approx;

TEST_CASE("pauli matrices and their products", "[qcore]") {
  const auto x = pauli_matrix('X'), y = pauli_matrix('Y'), z = pauli_matrix('Z');
  CHECK(max_diff(x * y, Complex(0, 1) * z) < 1e-15);
  CHECK(max_diff(x * x, identity_operator(1)) < 1e-15);
  CHECK_THROWS_AS(pauli_matrix('Q'), InvalidInput);
}

TEST_CASE("tensor product of X and Z matches the hand-expanded matrix", "[qcore]") {
  ComplexOperator expected = ComplexOperator::Zero(4, 4);
  // X (x) Z = [[0, Z], [Z, 0]]
  expected(0, 2) = 1;
  expected(1, 3) = -1;
  expected(2, 0) = 1;
  expected(3, 1) = -1;
  CHECK(max_diff(tensor_product(pauli_matrix('X'), pauli_matrix('Z')), expected) == 0.0);
  CHECK(max_diff(PauliString{"XZ", 1.0}.to_matrix(), expected) == 0.0);
}

TEST_CASE("density matrix validation", "[qcore]") {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(0, 0) = 0.5;
  CHECK_THROWS_AS(DensityMatrix(m), InvalidInput);  // trace 0.5
  m(1, 1) = 0.5;
  m(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(m), InvalidInput);  // not Hermitian
  m(1, 0) = 0.3;
  CHECK_NOTHROW(DensityMatrix(m));
  m(0, 1) = m(1, 0) = 0.7;
  CHECK_THROWS_AS(DensityMatrix(m), InvalidInput);  // eigenvalue -0.2
  CHECK_THROWS_AS(DensityMatrix(ComplexOperator::Identity(3, 3) / 3.0), InvalidInput);
}

TEST_CASE("basis and pure states", "[qcore]") {
  const auto rho = DensityMatrix::basis_state("10");
  CHECK(rho.matrix()(2, 2).real() == 1.0);
  CHECK(DensityMatrix::maximally_mixed(3).purity() == Approx(1.0 / 8));
  CHECK(DensityMatrix::pure(StateVector::Unit(4, 1)).purity() == Approx(1.0));
}

TEST_CASE("partial trace matches brute-force index summation", "[qcore]") {
  std::mt19937_64 rng(11);
  const DensityMatrix rho = random_density(rng, 3);
  const std::vector<int> keep = {0, 2};
  const DensityMatrix red = partial_trace(rho, keep);
  // bits (b0 b1 b2), keep b0 and b2, trace b1
  ComplexOperator oracle = ComplexOperator::Zero(4, 4);
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int c0 = 0; c0 < 2; ++c0)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int t = 0; t < 2; ++t) oracle(a0 * 2 + a2, c0 * 2 + c2) += rho.matrix()(a0 * 4 + t * 2 + a2, c0 * 4 + t * 2 + c2);
  CHECK(max_diff(red.matrix(), oracle) < 1e-14);
  const std::vector<int> swapped = {2, 0};
  // Kept sites stay in register order.
  CHECK(max_diff(partial_trace(rho, swapped).matrix(), oracle) < 1e-14);
}

TEST_CASE("hermitian exponential matches a Taylor series oracle", "[qcore]") {
  std::mt19937_64 rng(5);
  const ComplexOperator h = random_hermitian(rng, 4);
  const ComplexOperator e = hermitian_function(h, [](double x) { return std::exp(x); });
  CHECK(max_diff(e, taylor_exp(h)) < 1e-9);
  CHECK_THROWS_AS(hermitian_eigen(random_matrix(rng, 4)), InvalidInput);
}

TEST_CASE("entropy of diag(0.75, 0.25)", "[qcore]") {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  CHECK(von_neumann_entropy(DensityMatrix(m)) == Approx(0.5623351446188083).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(3)) == Approx(3 * std::log(2.0)));
  CHECK(von_neumann_entropy(DensityMatrix::basis_state("0101")) == Approx(0.0).margin(1e-12));
}

TEST_CASE("eigenvalue floor policy", "[qcore]") {
  CHECK(floor_eigenvalue(-1e-13) == kEigenFloor);
  CHECK(floor_eigenvalue(0.3) == 0.3);
  CHECK_THROWS_AS(floor_eigenvalue(-1e-6), InvalidInput);
  const std::vector<double> spec = {1.0, 0.0};
  CHECK(spectrum_entropy(spec) == Approx(0.0).margin(1e-10));
}

TEST_CASE("Uhlmann fidelity closed forms", "[qcore]") {
  CHECK(uhlmann_fidelity(DensityMatrix::maximally_mixed(1), DensityMatrix::basis_state("0")) == Approx(0.5));
  StateVector plus = StateVector::Constant(2, 1 / std::sqrt(2.0));
  // |<0|+>|^2
  CHECK(uhlmann_fidelity(DensityMatrix::pure(plus), DensityMatrix::basis_state("0")) == Approx(0.5));
  std::mt19937_64 rng(2);
  const auto rho = random_density(rng, 2);
  CHECK(uhlmann_fidelity(rho, rho) == Approx(1.0).epsilon(1e-9));
  // Commuting diagonal states: (sum sqrt(p q))^2
  ComplexOperator a = ComplexOperator::Zero(2, 2), b = ComplexOperator::Zero(2, 2);
  a(0, 0) = 0.9;
  a(1, 1) = 0.1;
  b(0, 0) = 0.4;
  b(1, 1) = 0.6;
  const double oracle = std::pow(std::sqrt(0.36) + std::sqrt(0.06), 2);
  CHECK(uhlmann_fidelity(DensityMatrix(a), DensityMatrix(b)) == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("expectation matches an explicit trace", "[qcore]") {
  std::mt19937_64 rng(9);
  const auto rho = random_density(rng, 3);
  const ComplexOperator h = random_hermitian(rng, 8);
  Complex tr = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) tr += h(i, j) * rho.matrix()(j, i);
  CHECK(expectation(rho, h) == Approx(tr.real()).epsilon(1e-12));
  CHECK_THROWS_AS(expectation(rho, random_matrix(rng, 8)), InvalidInput);
}

TEST_CASE("Pauli string masks and commutation", "[qcore]") {
  const PauliString a{"XYZI", 1.0}, b{"ZZII", 1.0}, c{"XXII", 1.0};
  CHECK(a.flip_mask() == 0b1100);
  CHECK(a.phase_mask() == 0b0110);
  CHECK(a.y_count() == 1);
  const auto commutes = [](const PauliString& p, const PauliString& q) {
    const ComplexOperator pm = p.to_matrix(), qm = q.to_matrix();
    return (pm * qm - qm * pm).norm() < 1e-12;
  };
  CHECK(a.commutes_with(b) == commutes(a, b));
  CHECK(b.commutes_with(c) == commutes(b, c));
  CHECK(a.commutes_with(c) == commutes(a, c));
  PauliSum s{2, {{"ZZ", -1.0}, {"ZI", 0.5}}};
  CHECK(s.is_diagonal());
  const RealVector d = s.diagonal();
  CHECK(max_diff(ComplexOperator(d.cast<Complex>().asDiagonal()), s.to_matrix()) < 1e-15);
}
