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
#include <numbers>

#include "support.hpp"
#include "thermalizer/channels.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/models.hpp"
#include "thermalizer/symmetry.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;
using Catch::Approx;

namespace {

ComplexOperator word(const char* w) { return PauliString{w, 1.0}.to_matrix(); }

SymmetryGroup four_group() {
  return SymmetryGroup::from_elements({word("III"), word("XXX"), word("XII"), word("IXX")});
}

// Kraus ops of a one-site channel embedded on site 0 of three.
KrausChannel on_first_of_three(const KrausChannel& ch) {
  std::vector<ComplexOperator> ops;
  for (const auto& k : ch.kraus_ops()) ops.push_back(tensor_product(k, identity_operator(2)));
  return KrausChannel(ops);
}

std::vector<double> real_row(const std::vector<Complex>& row) {
  std::vector<double> r;
  for (auto z : row) r.push_back(z.real());
  return r;
}

}  // namespace

TEST_CASE("group construction", "[symmetry]") {
  const auto g = four_group();
  CHECK(g.order() == 4);
  CHECK(g.is_abelian());
  CHECK(g.multiply(1, 2) == 3);  // XXX * XII = IXX
  CHECK(g.inverse(1) == 1);
  CHECK_THROWS_AS(SymmetryGroup::from_elements({word("II"), word("XI"), word("ZI")}), InvalidInput);  // XZ missing
  CHECK_THROWS_AS(SymmetryGroup::from_elements({word("II"), 2.0 * word("XI")}), InvalidInput);
}

TEST_CASE("character table of the four-element group", "[symmetry]") {
  const auto g = four_group();
  const auto t = character_table(g);
  REQUIRE(t.size() == 4);
  CHECK(real_row(t.characters[0]) == std::vector<double>{1, 1, 1, 1});
  // Reference rows for this group, in any order.
  const std::vector<std::vector<double>> expected = {{1, 1, 1, 1}, {1, -1, -1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}};
  for (const auto& row : t.characters) {
    CHECK(std::find(expected.begin(), expected.end(), real_row(row)) != expected.end());
  }
  CHECK_NOTHROW(validate_character_table(g, t));
  const auto proj = sector_projectors(g, t);
  ComplexOperator sum = ComplexOperator::Zero(8, 8);
  for (std::size_t a = 0; a < proj.size(); ++a) {
    CHECK(proj[a].trace().real() == Approx(2.0));
    for (std::size_t b = 0; b < proj.size(); ++b) {
      const ComplexOperator prod = proj[a] * proj[b];
      CHECK(max_diff(prod, a == b ? proj[a] : ComplexOperator::Zero(8, 8)) < 1e-12);
    }
    sum += proj[a];
  }
  CHECK(max_diff(sum, ComplexOperator::Identity(8, 8)) < 1e-12);
}

TEST_CASE("broken character tables are rejected", "[symmetry]") {
  const auto g = four_group();
  auto t = character_table(g);
  t.characters[1][1] *= -1.0;
  CHECK_THROWS_AS(validate_character_table(g, t), InvalidInput);
}

TEST_CASE("sector populations of a Gibbs state", "[symmetry]") {
  const SpinModel m{ModelKind::TFIM, 3};
  const ComplexOperator h = build_hamiltonian(m);
  const auto group = SymmetryGroup::generated_by(symmetry_generators(m));
  const auto table = character_table(group);
  const auto pops = sector_populations(gibbs_state(h, 1.0).state, sector_projectors(group, table));
  // Tally over eigenvectors by their X^n parity.
  const auto eig = hermitian_eigen(h);
  const ComplexOperator parity = word("XXX");
  double even = 0, z = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double w = std::exp(-eig.values(k));
    const double par = (eig.vectors.col(k).adjoint() * parity * eig.vectors.col(k))(0, 0).real();
    z += w;
    if (par > 0) even += w;
  }
  CHECK(pops[0] == Approx(even / z).epsilon(1e-10));
  CHECK(pops[0] + pops[1] == Approx(1.0));
}

TEST_CASE("weak symmetry", "[symmetry]") {
  const auto g = SymmetryGroup::generated_by({word("XXX")});
  CHECK(check_weak_symmetry(on_first_of_three(pauli_channel(PauliChannelKind::Phaseflip, 0.3)), g).symmetric);
  CHECK(check_weak_symmetry(on_first_of_three(pauli_channel(PauliChannelKind::Bitflip, 0.3)), g).symmetric);
  const auto x = SymmetryGroup::generated_by({pauli_matrix('X')});
  ComplexOperator lower = ComplexOperator::Zero(2, 2);
  lower(0, 1) = 1;
  LindbladGenerator damp;
  damp.jumps = {lower};
  CHECK_FALSE(check_lindblad_symmetry(damp, x).weakly_symmetric);
}

TEST_CASE("strong symmetry verdicts", "[symmetry]") {
  const auto g = SymmetryGroup::generated_by({word("XXX")});
  const auto bit = check_strong_symmetry(on_first_of_three(pauli_channel(PauliChannelKind::Bitflip, 0.3)), g);
  CHECK(bit.strongly_symmetric);
  for (double th : bit.phases) CHECK(th == Approx(0.0).margin(1e-12));
  CHECK_FALSE(check_strong_symmetry(on_first_of_three(pauli_channel(PauliChannelKind::Phaseflip, 0.3)), g).strongly_symmetric);

  const KrausChannel zz({std::sqrt(0.5) * word("ZII"), std::sqrt(0.5) * word("ZZZ")});
  const auto r = check_strong_symmetry(zz, four_group());
  CHECK(r.strongly_symmetric);
  const double pi = std::numbers::pi;
  REQUIRE(r.phases.size() == 4);
  CHECK(r.phases[0] == Approx(0.0).margin(1e-12));
  CHECK(r.phases[1] == Approx(pi));
  CHECK(r.phases[2] == Approx(pi));
  CHECK(r.phases[3] == Approx(0.0).margin(1e-12));
}

TEST_CASE("Lindblad symmetry of pair and dephasing jumps", "[symmetry]") {
  const auto xx = SymmetryGroup::generated_by({word("XX")});
  const auto pair = check_lindblad_symmetry(heisenberg_pair_jumps(0.7, 0.3), xx);
  CHECK(pair.weakly_symmetric);
  CHECK_FALSE(pair.strongly_symmetric);
  CHECK(pair.kraus_cross_check);
  LindbladGenerator deph;
  deph.jumps = {pauli_matrix('Z')};
  const auto x = SymmetryGroup::generated_by({pauli_matrix('X')});
  const auto d = check_lindblad_symmetry(deph, x);
  CHECK(d.weakly_symmetric);
  CHECK_FALSE(d.strongly_symmetric);
}

TEST_CASE("sector permutation of the {ZII, ZZZ} channel", "[symmetry]") {
  const auto g = four_group();
  const auto t = character_table(g);
  const KrausChannel zz({std::sqrt(0.5) * word("ZII"), std::sqrt(0.5) * word("ZZZ")});
  const auto perm = sector_permutation(zz, g, t);
  // Multiplying by the phase pattern (1, -1, -1, 1) swaps chi0<->chi1 and chi2<->chi3.
  const std::vector<double> phase = {1, -1, -1, 1};
  for (int a = 0; a < 4; ++a) {
    auto row = real_row(t.characters[static_cast<std::size_t>(a)]);
    for (int k = 0; k < 4; ++k) row[static_cast<std::size_t>(k)] *= phase[static_cast<std::size_t>(k)];
    CHECK(real_row(t.characters[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]) == row);
  }
  // Populations move accordingly on a random state.
  std::mt19937_64 rng(4);
  const auto rho = random_density(rng, 3);
  const auto proj = sector_projectors(g, t);
  const auto before = sector_populations(rho, proj);
  const auto after = sector_populations(DensityMatrix::trusted(apply_kraus(zz.kraus_ops(), rho.matrix())), proj);
  for (int a = 0; a < 4; ++a) {
    CHECK(after[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])] == Approx(before[static_cast<std::size_t>(a)]).epsilon(1e-10));
  }
  const auto xxx = SymmetryGroup::generated_by({word("XXX")});
  CHECK_THROWS_AS(sector_permutation(on_first_of_three(pauli_channel(PauliChannelKind::Phaseflip, 0.3)), xxx, character_table(xxx)),
                  PreconditionError);
}
