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

namespace {

// Random channel from a Haar-ish isometry V: C^d -> C^{d r}, K_i = V rows block i.
KrausChannel random_channel(std::mt19937_64& rng, int arity, int rank) {
  const Eigen::Index d = Eigen::Index{1} << arity;
  const ComplexOperator u = random_unitary(rng, d * rank);
  std::vector<ComplexOperator> ops;
  for (int i = 0; i < rank; ++i) ops.push_back(u.block(i * d, 0, d, d));
  return KrausChannel(std::move(ops));
}

LindbladGenerator random_generator(std::mt19937_64& rng, int arity, int jumps) {
  const Eigen::Index d = Eigen::Index{1} << arity;
  LindbladGenerator g;
  g.hamiltonian = random_hermitian(rng, d);
  for (int i = 0; i < jumps; ++i) g.jumps.push_back(0.5 * random_matrix(rng, d));
  return g;
}

std::vector<int> random_sites(std::mt19937_64& rng, int n, int k) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

void check_state(const DensityMatrix& rho) {
  CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-10);
  CHECK(hermiticity_defect(rho.matrix()) < 1e-10);
  CHECK(hermitian_eigen(rho.matrix()).values.minCoeff() > -1e-10);
}

}  // namespace

TEST_CASE("channels preserve trace and positivity", "[property][channels]") {
  const auto seed = GENERATE(range(0ULL, 30ULL));
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(seed % 5);
  const DensityMatrix rho = random_density(rng, n);
  std::uniform_real_distribution<double> u01;

  const auto one = random_sites(rng, n, 1);
  const auto two = random_sites(rng, n, 2);
  for (auto kind : {PauliChannelKind::Bitflip, PauliChannelKind::Phaseflip, PauliChannelKind::Depolarizing}) {
    check_state(apply_channel(pauli_channel(kind, u01(rng)), rho, one));
  }
  check_state(apply_channel(ising_projector_channel(u01(rng)), rho, two));
  const KrausChannel r = random_channel(rng, 2, 3);
  CHECK(r.completeness_defect() < 1e-10);
  const DensityMatrix out = apply_channel(r, rho, two);
  check_state(out);
  // Same map on the full register, assembled independently.
  std::vector<ComplexOperator> full;
  for (const auto& k : r.kraus_ops()) full.push_back(embed_operator(k, two, n));
  CHECK(max_diff(out.matrix(), apply_kraus(full, rho.matrix())) < 1e-10);
  check_state(lindblad_evolve(random_generator(rng, 2, 2), rho, 0.3 + u01(rng), two));
  check_state(lindblad_evolve(tfim_jump(u01(rng), u01(rng), seed % 2 == 0), rho, 1.0, one));
  check_state(lindblad_evolve(heisenberg_pair_jumps(u01(rng), u01(rng)), rho, 1.0, two));
}

TEST_CASE("Choi matrices of channels are positive", "[property][channels]") {
  const auto seed = GENERATE(range(100ULL, 120ULL));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01;
  CHECK(choi_min_eigenvalue(channel_superoperator(random_channel(rng, 1 + static_cast<int>(seed % 2), 2))) > -1e-10);
  CHECK(choi_min_eigenvalue(channel_superoperator(pauli_channel(PauliChannelKind::Depolarizing, u01(rng)))) > -1e-10);
  CHECK(choi_min_eigenvalue(channel_superoperator(ising_projector_channel(u01(rng)))) > -1e-10);
  const auto g = random_generator(rng, 2, 1 + static_cast<int>(seed % 3));
  const ComplexOperator p = lindblad_propagator(g, 0.05 + u01(rng));
  CHECK(choi_min_eigenvalue(p) > -1e-9);
  // Trace preservation of the propagator: vec(I)^dagger P = vec(I)^dagger.
  const Eigen::VectorXcd vid = vectorize(ComplexOperator::Identity(4, 4));
  CHECK((vid.adjoint() * p - vid.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  // Round trip through a Kraus decomposition.
  const KrausChannel k = kraus_from_superoperator(p);
  CHECK(max_diff(channel_superoperator(k), p) < 1e-9);
}

TEST_CASE("Lindblad propagators form a semigroup", "[property][channels]") {
  const auto seed = GENERATE(range(200ULL, 220ULL));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01;
  const auto g = random_generator(rng, 1 + static_cast<int>(seed % 2), 2);
  const double t = u01(rng), s = u01(rng);
  const ComplexOperator pt = lindblad_propagator(g, t), ps = lindblad_propagator(g, s);
  CHECK(max_diff(lindblad_propagator(g, t + s), pt * ps) < 1e-9);
  CHECK(max_diff(pt * ps, ps * pt) < 1e-9);
  CHECK(max_diff(lindblad_propagator(g, 0.0), ComplexOperator::Identity(pt.rows(), pt.cols())) < 1e-12);
  CHECK(max_diff(pt, taylor_exp(t * lindblad_superoperator(g))) < 1e-9);
}
