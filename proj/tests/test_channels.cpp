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
#include "thermalizer/channels.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/symmetry.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;
using Catch::Approx;

namespace {

ComplexOperator ket_bra(int d, int i, int j) {
  ComplexOperator m = ComplexOperator::Zero(d, d);
  m(i, j) = 1;
  return m;
}

}  // namespace

TEST_CASE("Kraus completeness is enforced", "[channels]") {
  CHECK_THROWS_AS(KrausChannel({0.9 * identity_operator(1)}), InvalidInput);
  CHECK_THROWS_AS(pauli_channel(PauliChannelKind::Bitflip, 1.2), InvalidInput);
  CHECK_THROWS_AS(pauli_channel(PauliChannelKind::Bitflip, -0.1), InvalidInput);
  CHECK(pauli_channel(PauliChannelKind::Depolarizing, 0.3).completeness_defect() < 1e-14);
  CHECK(pauli_channel(PauliChannelKind::Phaseflip, 0.0).kraus_ops().size() == 1);
}

TEST_CASE("vectorization convention", "[channels]") {
  std::mt19937_64 rng(1);
  const ComplexOperator a = random_matrix(rng, 2), x = random_matrix(rng, 2), b = random_matrix(rng, 2);
  // vec(A X B) = (B^T (x) A) vec X
  CHECK((vectorize(a * x * b) - tensor_product(b.transpose(), a) * vectorize(x)).norm() < 1e-13);
  CHECK(max_diff(unvectorize(vectorize(x)), x) == 0.0);
}

TEST_CASE("depolarizing composes to the accumulated strength", "[channels]") {
  const double lambda = 0.05;
  const int m = 10;
  const double big = 1 - std::pow(1 - lambda, m);
  CHECK(big == Approx(0.401263060761621).epsilon(1e-12));
  ComplexOperator s = channel_superoperator(pauli_channel(PauliChannelKind::Depolarizing, lambda));
  ComplexOperator acc = ComplexOperator::Identity(4, 4);
  for (int k = 0; k < m; ++k) acc = (s * acc).eval();
  CHECK(max_diff(acc, channel_superoperator(pauli_channel(PauliChannelKind::Depolarizing, big))) < 1e-14);
  // (1 - p) rho + p I/2
  std::mt19937_64 rng(2);
  const auto rho = random_density(rng, 1);
  const ComplexOperator out = unvectorize(s * vectorize(rho.matrix()));
  CHECK(max_diff(out, (1 - lambda) * rho.matrix() + lambda * identity_operator(1) / 2.0) < 1e-15);
}

TEST_CASE("phaseflip p = 1 maps |+> to |->", "[channels]") {
  StateVector plus = StateVector::Constant(2, 1 / std::sqrt(2.0));
  const auto out = apply_channel(pauli_channel(PauliChannelKind::Phaseflip, 1.0), DensityMatrix::pure(plus), std::vector<int>{0});
  CHECK(out.matrix()(0, 1).real() == Approx(-0.5));
  CHECK(out.matrix()(0, 0).real() == Approx(0.5));
}

TEST_CASE("channel application on sites of a product state", "[channels]") {
  std::mt19937_64 rng(6);
  std::vector<ComplexOperator> kraus;
  // Random CPTP map on two qubits via an isometry.
  const ComplexOperator u = random_unitary(rng, 8);
  for (int k = 0; k < 2; ++k) kraus.push_back(u.block(4 * k, 0, 4, 4));
  const KrausChannel ch(kraus);
  const DensityMatrix rho = DensityMatrix::basis_state("011");
  const std::vector<int> sites = {1, 2};
  const auto out = apply_channel(ch, rho, sites);
  std::vector<ComplexOperator> padded;
  for (const auto& k : kraus) padded.push_back(tensor_product(identity_operator(1), k));
  CHECK(max_diff(out.matrix(), apply_kraus(padded, rho.matrix())) < 1e-13);
  CHECK_THROWS_AS(apply_channel(ch, rho, std::vector<int>{0}), InvalidInput);
}

TEST_CASE("unitary channel superoperator", "[channels]") {
  std::mt19937_64 rng(7);
  const ComplexOperator u = random_unitary(rng, 4);
  const auto rho = random_density(rng, 2);
  const ComplexOperator s = channel_superoperator(unitary_channel(u));
  CHECK(max_diff(unvectorize(s * vectorize(rho.matrix())), u * rho.matrix() * u.adjoint()) < 1e-13);
}

TEST_CASE("Lindblad evolution closed forms", "[channels]") {
  SECTION("amplitude damping halves the population at kappa t = ln 2") {
    LindbladGenerator g;
    g.jumps = {ket_bra(2, 0, 1)};
    const auto out = lindblad_evolve(g, DensityMatrix::basis_state("1"), std::log(2.0), std::vector<int>{0});
    CHECK(out.matrix()(1, 1).real() == Approx(0.5).epsilon(1e-10));
  }
  SECTION("dephasing damps coherences as e^{-2pt}") {
    const double p = 0.3, t = 0.7;
    LindbladGenerator g;
    g.jumps = {std::sqrt(p) * pauli_matrix('Z')};
    StateVector plus = StateVector::Constant(2, 1 / std::sqrt(2.0));
    const auto out = lindblad_evolve(g, DensityMatrix::pure(plus), t, std::vector<int>{0});
    CHECK(std::abs(out.matrix()(0, 1)) == Approx(0.5 * std::exp(-2 * p * t)).epsilon(1e-10));
  }
  SECTION("propagator is a semigroup") {
    const auto g = tfim_jump(0.6, 0.4);
    const ComplexOperator a = lindblad_propagator(g, 0.3), b = lindblad_propagator(g, 0.5);
    CHECK(max_diff(a * b, lindblad_propagator(g, 0.8)) < 1e-12);
  }
  SECTION("generator matches the Taylor exponential") {
    const auto g = heisenberg_pair_jumps(0.4, 0.9);
    CHECK(max_diff(lindblad_propagator(g, 0.6), taylor_exp(0.6 * lindblad_superoperator(g))) < 1e-10);
  }
  SECTION("three-site generators are refused") {
    LindbladGenerator g;
    g.jumps = {identity_operator(3)};
    CHECK_THROWS_AS(lindblad_propagator(g, 1.0), UnsupportedInput);
  }
}

TEST_CASE("TFIM jump", "[channels]") {
  const double p = 0.7, q = 0.35;
  const auto plain = tfim_jump(p, q);
  const auto framed = tfim_jump(p, q, true);
  CHECK(max_diff(plain.jumps[0], std::sqrt(p) * (pauli_matrix('Z') + q * pauli_matrix('Y'))) < 1e-15);
  const ComplexOperator h = (pauli_matrix('X') + pauli_matrix('Z')) / std::sqrt(2.0);
  const ComplexOperator hh = tensor_product(h.conjugate(), h);
  CHECK(max_diff(lindblad_superoperator(framed), hh * lindblad_superoperator(plain) * hh.adjoint()) < 1e-10);
  // Parity is X in the plain frame and Z in the Hadamard frame. The jump
  // flips sign under it while the no-jump branch does not, as for dephasing.
  const auto parity_x = SymmetryGroup::generated_by({pauli_matrix('X')});
  const auto parity_z = SymmetryGroup::generated_by({pauli_matrix('Z')});
  for (double qq : {-1.0, 0.0, 0.5, 1.0}) {
    for (const auto& r : {check_lindblad_symmetry(tfim_jump(p, qq), parity_x),
                          check_lindblad_symmetry(tfim_jump(p, qq, true), parity_z)}) {
      CHECK(r.weakly_symmetric);
      CHECK_FALSE(r.strongly_symmetric);
    }
  }
  CHECK_FALSE(check_lindblad_symmetry(tfim_jump(p, 0.5, true), parity_x).weakly_symmetric);
}

TEST_CASE("Heisenberg pair jumps", "[channels]") {
  const auto g = heisenberg_pair_jumps(1.0, 0.0);
  const auto out = lindblad_evolve(g, DensityMatrix::basis_state("10"), 40.0, std::vector<int>{0, 1});
  CHECK(out.matrix()(3, 3).real() == Approx(1.0).margin(1e-9));
  const auto both = heisenberg_pair_jumps(0.8, 0.3);
  const ComplexOperator r = PauliString{"XX", 1}.to_matrix();
  CHECK(max_diff(r * both.jumps[0] * r, both.jumps[1]) < 1e-15);
}

TEST_CASE("effective rates from the physical construction", "[channels]") {
  const auto r = effective_rates_from_physical(1.0, 0.1, Complex(1.0, 0.0), 3.0, 1.0);
  CHECK(std::abs(r.sqrt_kappa_f - Complex(0.025, 0)) < 1e-15);
  CHECK(std::abs(r.sqrt_kappa_af - Complex(0.05 * 2.0 / 3.0, 0)) < 1e-15);
  CHECK(r.kappa_f == Approx(0.025 * 0.025));
  // delta_tilde * Delta = g^2
  CHECK_THROWS_AS(effective_rates_from_physical(1.0, 0.1, Complex(0.5, 0.0), 2.0, 1.0), SingularParameter);
}

TEST_CASE("Ising projector channel", "[channels]") {
  const auto out = apply_channel(ising_projector_channel(1.0), DensityMatrix::basis_state("01"), std::vector<int>{0, 1});
  CHECK(out.matrix()(0, 0).real() == Approx(1.0));
  const auto out2 = apply_channel(ising_projector_channel(1.0), DensityMatrix::basis_state("10"), std::vector<int>{0, 1});
  CHECK(out2.matrix()(3, 3).real() == Approx(1.0));
}

TEST_CASE("Choi matrix detects complete positivity", "[channels]") {
  CHECK(choi_min_eigenvalue(channel_superoperator(ising_projector_channel(0.4))) > -1e-12);
  // Transpose map: positive but not completely positive.
  ComplexOperator t = ComplexOperator::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t(j + 2 * i, i + 2 * j) = 1;
  CHECK(choi_min_eigenvalue(t) == Approx(-1.0));
}

TEST_CASE("Kraus recovery from a superoperator", "[channels]") {
  const ComplexOperator s = lindblad_propagator(heisenberg_pair_jumps(0.5, 0.2), 1.0);
  const KrausChannel k = kraus_from_superoperator(s);
  CHECK(k.completeness_defect() < 1e-10);
  CHECK(max_diff(channel_superoperator(k), s) < 1e-10);
}

TEST_CASE("small-time Kraus defect is second order", "[channels]") {
  std::mt19937_64 rng(3);
  LindbladGenerator g;
  g.hamiltonian = random_hermitian(rng, 2);
  g.jumps = {random_matrix(rng, 2), random_matrix(rng, 2)};
  const double d1 = small_time_kraus(g, 1e-2).completeness_defect();
  const double d2 = small_time_kraus(g, 5e-3).completeness_defect();
  CHECK(d2 / d1 == Approx(0.25).epsilon(1e-6));
}
