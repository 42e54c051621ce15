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
#include "thermalizer/ansatz.hpp"
#include "thermalizer/channels.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"
#include "thermalizer/models.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;
using Catch::Approx;

namespace {

ChannelTemplate chan(ChannelFamily f, bool per_site = false) {
  ChannelTemplate c;
  c.family = f;
  c.per_site = per_site;
  return c;
}

ComplexOperator generator_matrix(const GeneratorTemplate& g, int n) {
  ComplexOperator m = ComplexOperator::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& p : place_generator(g, n)) m += p.to_matrix();
  return m;
}

std::vector<int> bond(int k, int n) { return {k, (k + 1) % n}; }

// Straightforward dense evaluation of a shared-parameter ansatz.
ComplexOperator dense_reference(const AnsatzSpec& spec, const ParameterVector& p) {
  const int n = spec.n;
  const Eigen::Index d = Eigen::Index{1} << n;
  const StateVector plus = StateVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  ComplexOperator rho = plus * plus.adjoint();
  std::size_t ti = 0, li = 0;
  for (int layer = 0; layer < spec.m; ++layer) {
    for (const auto& g : spec.generators) {
      const ComplexOperator u = taylor_exp(Complex(0, -p.theta[ti++]) * generator_matrix(g, n));
      rho = (u * rho * u.adjoint()).eval();
    }
    for (const auto& c : spec.channels) {
      switch (c.family) {
        case ChannelFamily::Bitflip:
        case ChannelFamily::Phaseflip:
        case ChannelFamily::Depolarizing: {
          const auto kind = c.family == ChannelFamily::Bitflip     ? PauliChannelKind::Bitflip
                            : c.family == ChannelFamily::Phaseflip ? PauliChannelKind::Phaseflip
                                                                   : PauliChannelKind::Depolarizing;
          const auto ch = pauli_channel(kind, p.lambda[li++]);
          for (int s = 0; s < n; ++s) {
            std::vector<ComplexOperator> ops;
            for (const auto& k : ch.kraus_ops()) ops.push_back(embed_operator(k, std::vector<int>{s}, n));
            rho = apply_kraus(ops, rho);
          }
          break;
        }
        case ChannelFamily::IsingProjector: {
          const auto ch = ising_projector_channel(p.lambda[li++]);
          for (int k = 0; k < n; ++k) {
            std::vector<ComplexOperator> ops;
            for (const auto& kr : ch.kraus_ops()) ops.push_back(embed_operator(kr, bond(k, n), n));
            rho = apply_kraus(ops, rho);
          }
          break;
        }
        case ChannelFamily::HeisenbergPair:
        case ChannelFamily::TfimJump: {
          const double a = p.lambda[li++], b = p.lambda[li++];
          const auto gen = c.family == ChannelFamily::TfimJump ? tfim_jump(a, b, c.hadamard_frame) : heisenberg_pair_jumps(a, b);
          const int arity = gen.arity();
          for (int k = 0; k < n; ++k) {
            const std::vector<int> sites = arity == 1 ? std::vector<int>{k} : bond(k, n);
            LindbladGenerator full;
            for (const auto& l : gen.jumps) full.jumps.push_back(embed_operator(l, sites, n));
            const ComplexOperator prop = taylor_exp(c.time * lindblad_superoperator(full));
            rho = unvectorize(prop * vectorize(rho));
          }
          break;
        }
        case ChannelFamily::Identity:
          break;
      }
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("parameter counts", "[ansatz]") {
  AnsatzSpec s;
  s.n = 6;
  s.m = 3;
  s.generators = {ising_problem_generator(1, 1), mixing_generator()};
  s.channels = {chan(ChannelFamily::Bitflip), chan(ChannelFamily::IsingProjector)};
  CHECK(s.theta_count() == 6);
  CHECK(s.lambda_count() == 6);
  CHECK(s.size_parametric());
  s.generators.push_back(mixing_generator(true));
  s.channels.push_back(chan(ChannelFamily::HeisenbergPair, true));
  CHECK(s.theta_per_layer() == 2 + 6);
  CHECK(s.lambda_per_layer() == 2 + 12);
  CHECK_FALSE(s.size_parametric());
  CHECK_THROWS_AS(s.resized(4), UnsupportedInput);
}

TEST_CASE("zero angles and zero channel strength leave |+>", "[ansatz]") {
  AnsatzSpec s;
  s.n = 4;
  s.m = 2;
  s.generators = {coupling_generator(), mixing_generator()};
  s.channels = {chan(ChannelFamily::Phaseflip)};
  ParameterVector p{std::vector<double>(4, 0.0), std::vector<double>(2, 0.0)};
  CHECK(max_diff(evaluate_ansatz(s, p).matrix(), initial_state(4).matrix()) < 1e-14);
  s.m = 0;
  CHECK(max_diff(evaluate_ansatz(s, {}).matrix(), initial_state(4).matrix()) < 1e-14);
}

TEST_CASE("compiled evaluation matches the dense reference", "[ansatz]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ud(0.05, 0.45);
  AnsatzSpec s;
  s.n = 3;
  s.m = 2;
  s.generators = {ising_problem_generator(1.0, 0.7), mixing_generator(), heisenberg_problem_generator(-1.0)};
  SECTION("Pauli and projector channels") {
    s.channels = {chan(ChannelFamily::Bitflip), chan(ChannelFamily::Depolarizing), chan(ChannelFamily::IsingProjector)};
  }
  SECTION("Lindblad channels") {
    auto framed = chan(ChannelFamily::TfimJump);
    framed.hadamard_frame = true;
    s.channels = {chan(ChannelFamily::Phaseflip), framed, chan(ChannelFamily::HeisenbergPair)};
  }
  ParameterVector p;
  for (int k = 0; k < s.theta_count(); ++k) p.theta.push_back(3 * ud(rng));
  for (int k = 0; k < s.lambda_count(); ++k) p.lambda.push_back(ud(rng));
  const auto rho = evaluate_ansatz(s, p);
  CHECK(max_diff(rho.matrix(), dense_reference(s, p)) < 1e-10);
  CHECK(rho.matrix().trace().real() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-site angles", "[ansatz]") {
  AnsatzSpec s;
  s.n = 3;
  s.m = 1;
  s.generators = {mixing_generator(true)};
  ParameterVector p{{0.1, 0.2, 0.3}, {}};
  // exp(-i 0.1 (-X0)) exp(-i 0.2 (-X1)) exp(-i 0.3 (-X2)) on |+++> is a phase.
  const CompiledAnsatz a(s);
  const StateVector psi = a.evaluate_pure(p);
  CHECK(std::abs(psi.dot(plus_state(3))) == Approx(1.0));
  s.generators = {coupling_generator(true)};
  const StateVector psi2 = CompiledAnsatz(s).evaluate_pure(p);
  ComplexOperator u = ComplexOperator::Identity(8, 8);
  const char* words[3] = {"ZZI", "IZZ", "ZIZ"};
  for (int k = 0; k < 3; ++k) u = taylor_exp(Complex(0, 1) * p.theta[static_cast<std::size_t>(k)] * PauliString{words[k], 1}.to_matrix()) * u;
  CHECK((psi2 - u * plus_state(3)).norm() < 1e-12);
}

TEST_CASE("pure evaluation needs identity channels", "[ansatz]") {
  AnsatzSpec s;
  s.n = 3;
  s.m = 1;
  s.generators = {coupling_generator()};
  s.channels = {chan(ChannelFamily::Bitflip)};
  CHECK_THROWS_AS(CompiledAnsatz(s).evaluate_pure({{0.2}, {0.1}}), UnsupportedInput);
  s.channels = {chan(ChannelFamily::Identity)};
  const CompiledAnsatz a(s);
  const StateVector psi = a.evaluate_pure({{0.2}, {}});
  CHECK(max_diff(a.evaluate({{0.2}, {}}).matrix(), psi * psi.adjoint()) < 1e-14);
}

TEST_CASE("parameter vector shape is checked", "[ansatz]") {
  AnsatzSpec s;
  s.n = 3;
  s.m = 1;
  s.generators = {coupling_generator()};
  CHECK_THROWS_AS(evaluate_ansatz(s, {{0.1, 0.2}, {}}), InvalidInput);
}

TEST_CASE("channel strengths are clamped to their bounds", "[ansatz]") {
  AnsatzSpec s;
  s.n = 3;
  s.m = 1;
  s.channels = {chan(ChannelFamily::Bitflip)};
  CHECK(max_diff(evaluate_ansatz(s, {{}, {0.9}}).matrix(), evaluate_ansatz(s, {{}, {0.5}}).matrix()) < 1e-15);
}

TEST_CASE("squashing map", "[ansatz]") {
  const ParameterBounds b{-1.0, 3.0};
  CHECK(squash(0.0, b) == Approx(1.0));
  CHECK(squash(-50.0, b) >= b.lower);
  CHECK(squash(50.0, b) <= b.upper);
  for (double v : {-0.5, 0.0, 1.0, 2.9}) CHECK(squash(unsquash(v, b), b) == Approx(v).epsilon(1e-10));
  AnsatzSpec s;
  s.n = 3;
  s.m = 2;
  s.generators = {coupling_generator()};
  s.channels = {chan(ChannelFamily::TfimJump)};
  const ParameterVector p{{0.3, -0.4}, {1.2, -0.3, 0.7, 0.5}};
  const auto back = params_from_raw(s, raw_from_params(s, p));
  CHECK(back.theta == p.theta);
  for (std::size_t k = 0; k < p.lambda.size(); ++k) CHECK(back.lambda[k] == Approx(p.lambda[k]).epsilon(1e-10));
  const auto mid = midpoint_lambda(s);
  CHECK(mid == std::vector<double>{1.0, 0.0, 1.0, 0.0});
}
