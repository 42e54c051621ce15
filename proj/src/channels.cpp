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

#include "thermalizer/channels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"

namespace thermalizer {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability must lie in [0, 1]");
}

ComplexOperator ketbra(int n, unsigned ket, unsigned bra) {
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexOperator m = ComplexOperator::Zero(d, d);
  m(ket, bra) = 1.0;
  return m;
}

void push_nonzero(std::vector<ComplexOperator>& ops, ComplexOperator k) {
  if (k.cwiseAbs().maxCoeff() > 0.0) ops.push_back(std::move(k));
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexOperator> ops, Unchecked) : ops_(std::move(ops)) {
  if (ops_.empty()) throw InvalidInput("channel needs at least one Kraus operator");
  const Eigen::Index d = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw InvalidInput("Kraus operators must be square and equal size");
  }
  arity_ = qubit_count(d);
}

KrausChannel::KrausChannel(std::vector<ComplexOperator> ops)
    : KrausChannel(std::move(ops), Unchecked{}) {
  if (completeness_defect() > 1e-10) throw InvalidInput("Kraus set is not trace preserving");
}

KrausChannel KrausChannel::approximate(std::vector<ComplexOperator> ops) {
  return KrausChannel(std::move(ops), Unchecked{});
}

double KrausChannel::completeness_defect() const {
  const Eigen::Index d = ops_.front().rows();
  ComplexOperator s = ComplexOperator::Zero(d, d);
  for (const auto& k : ops_) s.noalias() += k.adjoint() * k;
  s -= ComplexOperator::Identity(d, d);
  return s.cwiseAbs().maxCoeff();
}

int LindbladGenerator::arity() const {
  if (hamiltonian.size() > 0) return qubit_count(hamiltonian.rows());
  if (!jumps.empty()) return qubit_count(jumps.front().rows());
  throw InvalidInput("empty generator has no arity");
}

void LindbladGenerator::validate() const {
  const Eigen::Index d = Eigen::Index{1} << arity();
  if (hamiltonian.size() > 0) {
    if (hamiltonian.rows() != d || hamiltonian.cols() != d) throw InvalidInput("Hamiltonian size mismatch");
    if (!is_hermitian(hamiltonian)) throw InvalidInput("generator Hamiltonian must be Hermitian");
  }
  for (const auto& l : jumps) {
    if (l.rows() != d || l.cols() != d) throw InvalidInput("jump operator size mismatch");
  }
}

KrausChannel pauli_channel(PauliChannelKind kind, double p) {
  check_probability(p);
  std::vector<ComplexOperator> ops;
  const ComplexOperator id = ComplexOperator::Identity(2, 2);
  switch (kind) {
    case PauliChannelKind::Bitflip:
      push_nonzero(ops, std::sqrt(1 - p) * id);
      push_nonzero(ops, std::sqrt(p) * pauli_matrix('X'));
      break;
    case PauliChannelKind::Phaseflip:
      push_nonzero(ops, std::sqrt(1 - p) * id);
      push_nonzero(ops, std::sqrt(p) * pauli_matrix('Z'));
      break;
    case PauliChannelKind::Depolarizing:
      push_nonzero(ops, std::sqrt(1 - 0.75 * p) * id);
      for (char c : {'X', 'Y', 'Z'}) push_nonzero(ops, std::sqrt(p / 4) * pauli_matrix(c));
      break;
  }
  return KrausChannel(std::move(ops));
}

KrausChannel identity_channel(int arity) { return KrausChannel({identity_operator(arity)}); }

KrausChannel unitary_channel(const ComplexOperator& u) {
  const Eigen::Index d = u.rows();
  if ((u.adjoint() * u - ComplexOperator::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidInput("operator is not unitary");
  }
  return KrausChannel({u});
}

KrausChannel ising_projector_channel(double p) {
  check_probability(p);
  const ComplexOperator proj = ketbra(2, 0, 0) + ketbra(2, 3, 3);
  const ComplexOperator pump = ketbra(2, 0, 1) + ketbra(2, 3, 2);
  std::vector<ComplexOperator> ops;
  push_nonzero(ops, std::sqrt(1 - p) * identity_operator(2));
  push_nonzero(ops, std::sqrt(p) * proj);
  push_nonzero(ops, std::sqrt(p) * pump);
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho,
                            std::span<const int> sites) {
  if (static_cast<int>(sites.size()) != channel.arity()) throw InvalidInput("channel arity does not match sites");
  const LocalLayout layout(rho.qubits(), sites);
  ComplexOperator m = rho.matrix();
  apply_local_superoperator(m, channel_superoperator(channel), layout);
  return DensityMatrix::trusted(std::move(m));
}

Eigen::VectorXcd vectorize(const ComplexOperator& a) {
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

ComplexOperator unvectorize(const Eigen::VectorXcd& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw InvalidInput("vector length is not a square");
  return Eigen::Map<const ComplexOperator>(v.data(), d, d);
}

ComplexOperator channel_superoperator(const KrausChannel& channel) {
  const Eigen::Index d = channel.kraus_ops().front().rows();
  ComplexOperator s = ComplexOperator::Zero(d * d, d * d);
  for (const auto& k : channel.kraus_ops()) s += tensor_product(k.conjugate(), k);
  return s;
}

ComplexOperator lindblad_superoperator(const LindbladGenerator& gen) {
  gen.validate();
  const Eigen::Index d = Eigen::Index{1} << gen.arity();
  const ComplexOperator id = ComplexOperator::Identity(d, d);
  ComplexOperator s = ComplexOperator::Zero(d * d, d * d);
  const Complex i(0, 1);
  if (gen.hamiltonian.size() > 0) {
    s += -i * (tensor_product(id, gen.hamiltonian) -
               tensor_product(gen.hamiltonian.transpose(), id));
  }
  for (const auto& l : gen.jumps) {
    const ComplexOperator ldl = l.adjoint() * l;
    s += tensor_product(l.conjugate(), l);
    s -= 0.5 * tensor_product(id, ldl);
    s -= 0.5 * tensor_product(ldl.transpose(), id);
  }
  return s;
}

ComplexOperator lindblad_propagator(const LindbladGenerator& gen, double t) {
  if (t < 0 || !std::isfinite(t)) throw InvalidInput("evolution time must be finite and >= 0");
  if (gen.arity() > 2) throw UnsupportedInput("Lindblad evolution supports at most two sites");
  const ComplexOperator s = lindblad_superoperator(gen);
  if (t == 0.0) return ComplexOperator::Identity(s.rows(), s.cols());
  return (t * s).exp();
}

DensityMatrix lindblad_evolve(const LindbladGenerator& gen, const DensityMatrix& rho, double t,
                              std::span<const int> sites) {
  if (static_cast<int>(sites.size()) != gen.arity()) throw InvalidInput("generator arity does not match sites");
  const ComplexOperator prop = lindblad_propagator(gen, t);
  const LocalLayout layout(rho.qubits(), sites);
  ComplexOperator m = rho.matrix();
  apply_local_superoperator(m, prop, layout);
  return DensityMatrix::trusted(std::move(m));
}

ComplexOperator choi_matrix(const ComplexOperator& superop) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(superop.rows()))));
  // C = sum_ij |i><j| (x) E(|i><j|); E(|i><j|) is column i + d j of the superoperator.
  ComplexOperator c = ComplexOperator::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const ComplexOperator out = unvectorize(superop.col(i + d * j));
      c.block(i * d, j * d, d, d) = out;
    }
  }
  return c;
}

double choi_min_eigenvalue(const ComplexOperator& superop) {
  const ComplexOperator c = choi_matrix(superop);
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

KrausChannel kraus_from_superoperator(const ComplexOperator& superop, double cutoff) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(superop.rows()))));
  const ComplexOperator c = choi_matrix(superop);
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(0.5 * (c + c.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-9) throw InvalidInput("map is not completely positive");
  std::vector<ComplexOperator> ops;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    const double w = es.eigenvalues()(k);
    if (w <= cutoff) continue;
    // Choi eigenvector v = sum_i |i> (x) K|i>, so K(a, i) = v[i d + a].
    ComplexOperator kop(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index a = 0; a < d; ++a) kop(a, i) = std::sqrt(w) * es.eigenvectors()(i * d + a, k);
    }
    ops.push_back(std::move(kop));
  }
  return KrausChannel::approximate(std::move(ops));
}

LindbladGenerator tfim_jump(double p, double q, bool hadamard_frame) {
  if (!(p >= 0.0)) throw InvalidInput("jump rate must be >= 0");
  const ComplexOperator l = hadamard_frame ? ComplexOperator(pauli_matrix('X') - q * pauli_matrix('Y'))
                                           : ComplexOperator(pauli_matrix('Z') + q * pauli_matrix('Y'));
  return {ComplexOperator::Zero(2, 2), {std::sqrt(p) * l}};
}

LindbladGenerator heisenberg_pair_jumps(double kappa_f, double kappa_af) {
  if (!(kappa_f >= 0.0 && kappa_af >= 0.0)) throw InvalidInput("rates must be >= 0");
  const double f = std::sqrt(kappa_f);
  const double af = std::sqrt(kappa_af);
  // basis order |00>, |01>, |10>, |11>
  ComplexOperator l0 = f * ketbra(2, 3, 2) + af * ketbra(2, 1, 0);
  ComplexOperator l1 = f * ketbra(2, 0, 1) + af * ketbra(2, 2, 3);
  return {ComplexOperator::Zero(4, 4), {std::move(l0), std::move(l1)}};
}

EffectiveRates effective_rates_from_physical(double g, double omega, Complex delta_tilde,
                                             double Delta, double kappa) {
  if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
  if (g == 0.0) throw InvalidInput("g must be nonzero");
  const double scale = 1e-12 * std::max(1.0, g * g);
  const Complex den_f = delta_tilde * Delta - g * g;
  const Complex den_af = delta_tilde * Delta * Delta - 2.0 * g * g * Delta;
  if (std::abs(den_f) <= scale) throw SingularParameter("flip-rate denominator vanishes");
  if (std::abs(den_af) <= scale * std::max(1.0, std::abs(Delta))) {
    throw SingularParameter("antiflip-rate denominator vanishes");
  }
  const Complex ratio_f = delta_tilde / den_f;
  const Complex ratio_af = den_f / den_af;
  const double amp = std::sqrt(kappa) * omega / 2.0;
  EffectiveRates r;
  r.sqrt_kappa_f = amp * ratio_f;
  r.sqrt_kappa_af = amp * ratio_af;
  r.kappa_f = std::norm(r.sqrt_kappa_f);
  r.kappa_af = std::norm(r.sqrt_kappa_af);
  const double shift = (omega / 2.0) * (omega / 2.0) * 2.0;
  r.h_eff_diag = {shift * ratio_f.real(), shift * ratio_af.real()};
  return r;
}

KrausChannel small_time_kraus(const LindbladGenerator& gen, double dt) {
  gen.validate();
  const Eigen::Index d = Eigen::Index{1} << gen.arity();
  ComplexOperator hnh = ComplexOperator::Zero(d, d);
  if (gen.hamiltonian.size() > 0) hnh += Complex(0, -1) * gen.hamiltonian;
  for (const auto& l : gen.jumps) hnh -= 0.5 * l.adjoint() * l;
  std::vector<ComplexOperator> ops;
  ops.push_back(ComplexOperator::Identity(d, d) + dt * hnh);
  for (const auto& l : gen.jumps) push_nonzero(ops, std::sqrt(dt) * l);
  return KrausChannel::approximate(std::move(ops));
}

}  // namespace thermalizer
