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

#include "thermalizer/models.hpp"

#include <cmath>
#include <string>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

PauliString single(int n, int site, char op, double c) {
  PauliString p{std::string(static_cast<std::size_t>(n), 'I'), c};
  p.ops[static_cast<std::size_t>(site)] = op;
  return p;
}

PauliString bond(int n, int site, char op, double c) {
  PauliString p{std::string(static_cast<std::size_t>(n), 'I'), c};
  p.ops[static_cast<std::size_t>(site)] = op;
  p.ops[static_cast<std::size_t>((site + 1) % n)] = op;
  return p;
}

}  // namespace

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Ising: return "ising";
    case ModelKind::TFIM: return "tfim";
    case ModelKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "ising") return ModelKind::Ising;
  if (name == "tfim") return ModelKind::TFIM;
  if (name == "heisenberg") return ModelKind::Heisenberg;
  throw InvalidInput("unknown model kind: " + name);
}

PauliSum model_terms(const SpinModel& model) {
  const int n = model.n;
  if (n < 3) throw InvalidInput("periodic rings need n >= 3");
  if (n > kMaxQubits) throw InvalidInput("register too large");
  PauliSum h{n, {}};
  switch (model.kind) {
    case ModelKind::Ising:
      for (int k = 0; k < n; ++k) h.terms.push_back(bond(n, k, 'Z', -model.J));
      for (int k = 0; k < n; ++k) h.terms.push_back(single(n, k, 'Z', -model.g));
      break;
    case ModelKind::TFIM:
      for (int k = 0; k < n; ++k) h.terms.push_back(bond(n, k, 'Z', -model.J));
      for (int k = 0; k < n; ++k) h.terms.push_back(single(n, k, 'X', -model.g));
      break;
    case ModelKind::Heisenberg: {
      const double s = model.heisenberg_plus ? 1.0 : -1.0;
      for (int k = 0; k < n; ++k) {
        for (char op : {'X', 'Y', 'Z'}) h.terms.push_back(bond(n, k, op, s));
      }
      for (int k = 0; k < n; ++k) h.terms.push_back(single(n, k, 'X', -model.delta));
      break;
    }
  }
  return h;
}

ComplexOperator build_hamiltonian(const SpinModel& model) { return model_terms(model).to_matrix(); }

ComplexOperator translation_operator(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexOperator t = ComplexOperator::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    // bit of site s is (n-1-s); moving site s to s+1 rotates bits right by one.
    const auto u = static_cast<std::uint64_t>(j);
    const std::uint64_t low = u & 1U;
    const std::uint64_t shifted = (u >> 1) | (low << (n - 1));
    t(static_cast<Eigen::Index>(shifted), j) = 1.0;
  }
  return t;
}

std::vector<ComplexOperator> symmetry_generators(const SpinModel& model) {
  if (model.kind == ModelKind::Ising) return {translation_operator(model.n)};
  return {PauliString{std::string(static_cast<std::size_t>(model.n), 'X'), 1.0}.to_matrix()};
}

GibbsTarget gibbs_state(const ComplexOperator& h, double beta) {
  if (beta < 0 || !std::isfinite(beta)) throw InvalidInput("beta must be finite and >= 0");
  const HermitianEigen eig = hermitian_eigen(h);
  const double e0 = eig.values.minCoeff();
  RealVector w = (-beta * (eig.values.array() - e0)).exp();
  const double s = w.sum();
  GibbsTarget out;
  out.hamiltonian = h;
  out.beta = beta;
  out.log_partition = -beta * e0 + std::log(s);
  out.partition_function = std::exp(out.log_partition);
  out.energies = eig.values;
  w /= s;
  ComplexOperator rho = eig.vectors * w.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  out.state = DensityMatrix::trusted(std::move(rho));
  return out;
}

PauliSum mixing_terms(int n) {
  PauliSum h{n, {}};
  for (int k = 0; k < n; ++k) h.terms.push_back(single(n, k, 'X', -1.0));
  return h;
}

ComplexOperator mixing_hamiltonian(int n) {
  if (n < 1) throw InvalidInput("n must be positive");
  return mixing_terms(n).to_matrix();
}

StateVector plus_state(int n) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("register size out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  return StateVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
}

DensityMatrix initial_state(int n) { return DensityMatrix::pure(plus_state(n)); }

double free_energy(const DensityMatrix& rho, const ComplexOperator& h, double beta,
                   double entropy_value) {
  return beta * expectation(rho, h) - entropy_value;
}

}  // namespace thermalizer
