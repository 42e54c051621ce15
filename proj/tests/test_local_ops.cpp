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

#include "support.hpp"
#include "thermalizer/channels.hpp"
#include "thermalizer/local_ops.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;

TEST_CASE("local conjugation equals the embedded operator", "[local_ops]") {
  std::mt19937_64 rng(3);
  const auto rho = random_density(rng, 4);
  const ComplexOperator u = random_unitary(rng, 4);
  const std::vector<int> sites = {3, 1};
  ComplexOperator m = rho.matrix();
  conjugate_local(m, u, LocalLayout(4, sites));
  const ComplexOperator full = embed_operator(u, sites, 4);
  CHECK(max_diff(m, full * rho.matrix() * full.adjoint()) < 1e-13);
}

TEST_CASE("embedding pads with identities", "[local_ops]") {
  const std::vector<int> sites = {1};
  const ComplexOperator e = embed_operator(pauli_matrix('X'), sites, 3);
  CHECK(max_diff(e, PauliString{"IXI", 1}.to_matrix()) == 0.0);
  const std::vector<int> pair = {2, 0};
  CHECK(max_diff(embed_operator(PauliString{"XZ", 1}.to_matrix(), pair, 3), PauliString{"ZIX", 1}.to_matrix()) == 0.0);
}

TEST_CASE("local superoperator equals the Kraus embedding", "[local_ops]") {
  std::mt19937_64 rng(8);
  const auto rho = random_density(rng, 3);
  const auto ch = ising_projector_channel(0.35);
  const std::vector<int> sites = {2, 1};
  ComplexOperator m = rho.matrix();
  apply_local_superoperator(m, channel_superoperator(ch), LocalLayout(3, sites));
  std::vector<ComplexOperator> full;
  for (const auto& k : ch.kraus_ops()) full.push_back(embed_operator(k, sites, 3));
  CHECK(max_diff(m, apply_kraus(full, rho.matrix())) < 1e-13);
}

TEST_CASE("Pauli rotations match the dense exponential", "[local_ops]") {
  std::mt19937_64 rng(4);
  const auto rho = random_density(rng, 3);
  const StateVector psi = random_state(rng, 3);
  for (const char* w : {"XYZ", "ZIZ", "IYI", "XXI"}) {
    const PauliString p{w, 1.0};
    const ComplexOperator u = taylor_exp(Complex(0, -0.37) * p.to_matrix());
    ComplexOperator m = rho.matrix(), scratch;
    apply_pauli_rotation(m, p, 0.37, scratch);
    CHECK(max_diff(m, u * rho.matrix() * u.adjoint()) < 1e-13);
    StateVector v = psi;
    apply_pauli_rotation(v, p, 0.37);
    CHECK((v - u * psi).norm() < 1e-13);
    CHECK((apply_pauli(PauliString{w, -0.5}, psi) - (-0.5) * p.to_matrix() * psi).norm() < 1e-14);
  }
}

TEST_CASE("Pauli mixture kernel matches Kraus application", "[local_ops]") {
  std::mt19937_64 rng(12);
  const auto rho = random_density(rng, 3);
  const std::array<double, 4> w = {0.4, 0.3, 0.2, 0.1};
  ComplexOperator m = rho.matrix();
  apply_pauli_mixture(m, 3, 1, w);
  std::vector<ComplexOperator> ops;
  const char labels[4] = {'I', 'X', 'Y', 'Z'};
  for (int k = 0; k < 4; ++k) ops.push_back(std::sqrt(w[k]) * PauliString{std::string("I") + labels[k] + "I", 1}.to_matrix());
  CHECK(max_diff(m, apply_kraus(ops, rho.matrix())) < 1e-14);
}

TEST_CASE("diagonal unitary", "[local_ops]") {
  std::mt19937_64 rng(1);
  const auto rho = random_density(rng, 2);
  Eigen::VectorXcd u(4);
  for (int i = 0; i < 4; ++i) u(i) = std::polar(1.0, 0.3 * i);
  ComplexOperator m = rho.matrix();
  apply_diagonal_unitary(m, u);
  const ComplexOperator d = u.asDiagonal();
  CHECK(max_diff(m, d * rho.matrix() * d.adjoint()) < 1e-15);
}
