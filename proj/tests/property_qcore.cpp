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

#include <numeric>

#include "support.hpp"
#include "thermalizer/qcore.hpp"

using namespace thermalizer;
using namespace thermalizer::testing;

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v(static_cast<std::size_t>(hi - lo));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

TEST_CASE("entropy is subadditive and obeys the triangle inequality", "[property][entropy]") {
  const auto seed = GENERATE(range(0ULL, 25ULL));
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(seed % 5);
  const int cut = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
  // Mix in low-rank states, which stress the bound hardest.
  const DensityMatrix rho = seed % 3 == 0 ? DensityMatrix::pure(random_state(rng, n)) : random_density(rng, n);
  const auto a = range(0, cut), b = range(cut, n);
  const double s_ab = von_neumann_entropy(rho);
  const double s_a = von_neumann_entropy(partial_trace(rho, a));
  const double s_b = von_neumann_entropy(partial_trace(rho, b));
  CHECK(s_ab <= s_a + s_b + 1e-9);
  CHECK(std::abs(s_a - s_b) <= s_ab + 1e-9);
  CHECK(s_ab <= n * std::log(2.0) + 1e-9);
}

TEST_CASE("entropy is unitarily invariant", "[property][entropy]") {
  const auto seed = GENERATE(range(100ULL, 120ULL));
  std::mt19937_64 rng(seed);
  const int n = 1 + static_cast<int>(seed % 6);
  const DensityMatrix rho = random_density(rng, n);
  const ComplexOperator u = random_unitary(rng, rho.dim());
  const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
  CHECK(von_neumann_entropy(rotated) == Catch::Approx(von_neumann_entropy(rho)).margin(1e-10));
  CHECK(uhlmann_fidelity(rotated, DensityMatrix(u * rho.matrix() * u.adjoint())) == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("fidelity is symmetric and bounded", "[property][fidelity]") {
  const auto seed = GENERATE(range(200ULL, 215ULL));
  std::mt19937_64 rng(seed);
  const int n = 1 + static_cast<int>(seed % 4);
  const DensityMatrix rho = random_density(rng, n), sigma = random_density(rng, n);
  const double f = uhlmann_fidelity(rho, sigma);
  CHECK(f >= 0.0);
  CHECK(f <= 1.0 + 1e-12);
  CHECK(f == Catch::Approx(uhlmann_fidelity(sigma, rho)).margin(1e-9));
}

TEST_CASE("partial traces compose", "[property][partial_trace]") {
  const auto seed = GENERATE(range(300ULL, 310ULL));
  std::mt19937_64 rng(seed);
  const int n = 3 + static_cast<int>(seed % 3);
  const DensityMatrix rho = random_density(rng, n);
  const auto keep = range(0, n - 1);
  const std::vector<int> inner{0, 1};
  const DensityMatrix twice = partial_trace(partial_trace(rho, keep), inner);
  CHECK(max_diff(twice.matrix(), partial_trace(rho, inner).matrix()) < 1e-12);
  CHECK(std::abs(partial_trace(rho, keep).matrix().trace() - 1.0) < 1e-12);
}
