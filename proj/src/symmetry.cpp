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

#include "thermalizer/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

constexpr double kGroupTol = 1e-10;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool same(const ComplexOperator& a, const ComplexOperator& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kGroupTol;
}

int find_element(const std::vector<ComplexOperator>& elems, const ComplexOperator& m) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (same(elems[i], m)) return static_cast<int>(i);
  }
  return -1;
}

void check_unitary(const ComplexOperator& u) {
  const Eigen::Index d = u.rows();
  if (u.cols() != d) throw InvalidInput("representation matrices must be square");
  if ((u.adjoint() * u - ComplexOperator::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("representation matrix is not unitary");
  }
}

double wrap_phase(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (kTwoPi - w < 1e-9) w = 0.0;
  return w;
}

ComplexOperator conjugation_superop(const ComplexOperator& r) { return tensor_product(r.conjugate(), r); }

}  // namespace

SymmetryGroup SymmetryGroup::from_elements(std::vector<ComplexOperator> elements) {
  if (elements.empty()) throw InvalidInput("group needs at least one element");
  const Eigen::Index d = elements.front().rows();
  for (const auto& e : elements) {
    if (e.rows() != d) throw InvalidInput("representation matrices differ in size");
    check_unitary(e);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (same(elements[i], elements[j])) throw InvalidInput("representation is not faithful: repeated element");
    }
  }
  SymmetryGroup g;
  g.identity_ = find_element(elements, ComplexOperator::Identity(d, d));
  if (g.identity_ < 0) throw InvalidInput("group lacks the identity");
  const std::size_t n = elements.size();
  g.table_.assign(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const int c = find_element(elements, elements[a] * elements[b]);
      if (c < 0) throw InvalidInput("elements are not closed under multiplication");
      g.table_[a][b] = c;
    }
  }
  g.elements_ = std::move(elements);
  return g;
}

SymmetryGroup SymmetryGroup::generated_by(const std::vector<ComplexOperator>& generators,
                                          std::size_t max_order) {
  if (generators.empty()) throw InvalidInput("need at least one generator");
  const Eigen::Index d = generators.front().rows();
  std::vector<ComplexOperator> elems{ComplexOperator::Identity(d, d)};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : generators) {
      ComplexOperator next = gen * elems[i];
      if (find_element(elems, next) < 0) {
        elems.push_back(std::move(next));
        if (elems.size() > max_order) throw InvalidInput("generated group exceeds the order limit");
      }
    }
  }
  return from_elements(std::move(elems));
}

int SymmetryGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b) {
    if (multiply(a, b) == identity_) return b;
  }
  throw InvalidInput("element without inverse");
}

bool SymmetryGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = a + 1; b < order(); ++b) {
      if (multiply(a, b) != multiply(b, a)) return false;
    }
  }
  return true;
}

CharacterTable character_table(const SymmetryGroup& group) {
  if (!group.is_abelian()) throw UnsupportedInput("character tables are only built for abelian groups");
  const int n = group.order();
  // Regular representation; its joint eigenvectors carry the characters.
  std::vector<Eigen::MatrixXd> reg(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) reg[static_cast<std::size_t>(g)](group.multiply(g, h), h) = 1.0;
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  ComplexOperator mix = ComplexOperator::Zero(n, n);
  for (int g = 0; g < n; ++g) mix += Complex(nd(rng), nd(rng)) * reg[static_cast<std::size_t>(g)].cast<Complex>();
  Eigen::ComplexEigenSolver<ComplexOperator> es(mix);
  const ComplexOperator& v = es.eigenvectors();

  const int identity = group.identity_index();
  struct Row {
    std::vector<int> steps;  // phase of chi(g) in units of 2pi/|G|
    std::vector<Complex> chi;
  };
  std::vector<Row> rows;
  for (int k = 0; k < n; ++k) {
    Eigen::Index pivot = 0;
    v.col(k).cwiseAbs().maxCoeff(&pivot);
    Row row;
    for (int g = 0; g < n; ++g) {
      // v = sum_h conj(chi(h)) e_h satisfies R_reg(g) v = chi(g) v.
      const Complex chi = (reg[static_cast<std::size_t>(g)].cast<Complex>() * v.col(k))(pivot) / v(pivot, k);
      const double ph = wrap_phase(std::arg(chi));
      int step = static_cast<int>(std::lround(ph * n / kTwoPi)) % n;
      row.steps.push_back(step);
      row.chi.push_back(std::polar(1.0, kTwoPi * step / n));
    }
    if (row.steps[static_cast<std::size_t>(identity)] != 0) throw InvalidInput("character table extraction failed");
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.steps < b.steps; });
  CharacterTable table;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    table.irreps.push_back("chi" + std::to_string(a));
    table.characters.push_back(rows[a].chi);
  }
  validate_character_table(group, table);
  return table;
}

void validate_character_table(const SymmetryGroup& group, const CharacterTable& table) {
  const int n = group.order();
  if (table.size() != n) throw InvalidInput("abelian character table needs |G| irreps");
  for (const auto& row : table.characters) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("character row has wrong length");
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const Complex lhs = row[static_cast<std::size_t>(group.multiply(a, b))];
        if (std::abs(lhs - row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)]) > 1e-10) {
          throw InvalidInput("character row is not a one-dimensional representation");
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Complex s = 0.0;
      for (int g = 0; g < n; ++g) {
        s += table.characters[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)] *
             std::conj(table.characters[static_cast<std::size_t>(b)][static_cast<std::size_t>(g)]);
      }
      s /= static_cast<double>(n);
      if (std::abs(s - (a == b ? 1.0 : 0.0)) > 1e-10) throw InvalidInput("characters are not orthonormal");
    }
  }
}

std::vector<ComplexOperator> sector_projectors(const SymmetryGroup& group, const CharacterTable& table) {
  if (!group.is_abelian()) throw UnsupportedInput("sector projectors need an abelian group");
  validate_character_table(group, table);
  const Eigen::Index d = group.element(0).rows();
  std::vector<ComplexOperator> out;
  for (const auto& row : table.characters) {
    ComplexOperator p = ComplexOperator::Zero(d, d);
    for (int g = 0; g < group.order(); ++g) p += row[static_cast<std::size_t>(g)] * group.element(g);
    out.push_back(p / static_cast<double>(group.order()));
  }
  return out;
}

std::vector<double> sector_populations(const DensityMatrix& rho,
                                       const std::vector<ComplexOperator>& projectors) {
  std::vector<double> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors) {
    if (p.rows() != rho.dim()) throw InvalidInput("projector dimension mismatch");
    out.push_back((p.cwiseProduct(rho.matrix().transpose())).sum().real());
  }
  return out;
}

double superoperator_norm(const ComplexOperator& a) {
  if (a.rows() <= 256) return spectral_norm(a);
  // Power iteration on A^dagger A.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(rng), nd(rng));
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double next = std::sqrt(nw);
    if (std::abs(next - est) <= 1e-13 * std::max(1.0, next)) return next;
    est = next;
  }
  return est;
}

WeakSymmetryResult check_weak_symmetry(const KrausChannel& channel, const SymmetryGroup& group, double tol) {
  if (channel.arity() != group.qubits()) throw InvalidInput("channel and group act on different registers");
  const ComplexOperator s = channel_superoperator(channel);
  WeakSymmetryResult r;
  for (const auto& g : group.elements()) {
    const ComplexOperator sg = conjugation_superop(g);
    r.residual = std::max(r.residual, superoperator_norm(sg * s * sg.adjoint() - s));
  }
  r.symmetric = r.residual <= tol;
  return r;
}

SymmetryReport check_strong_symmetry(const KrausChannel& channel, const SymmetryGroup& group, double tol) {
  if (channel.arity() != group.qubits()) throw InvalidInput("channel and group act on different registers");
  const auto& ks = channel.kraus_ops();
  for (const auto& k : ks) {
    if (k.cwiseAbs().maxCoeff() == 0.0) throw InvalidInput("zero-norm Kraus operator");
  }
  SymmetryReport rep;
  const WeakSymmetryResult weak = check_weak_symmetry(channel, group, tol);
  rep.weak_residual = weak.residual;
  rep.weakly_symmetric = weak.symmetric;

  const ComplexOperator& k1 = ks.front();
  std::vector<double> phases;
  bool phase_defined = true;
  for (const auto& r : group.elements()) {
    const Complex t = (k1.adjoint() * r * k1 * r.adjoint()).trace();
    if (std::abs(t) <= 1e-12 * std::max(1.0, k1.squaredNorm())) {
      phase_defined = false;
      phases.push_back(0.0);
      continue;
    }
    const double theta = wrap_phase(std::arg(t));
    phases.push_back(theta);
    const Complex e = std::polar(1.0, theta);
    for (const auto& k : ks) {
      rep.strong_residual = std::max(rep.strong_residual, spectral_norm(r * k * r.adjoint() - e * k));
    }
  }
  if (!phase_defined) {
    rep.strongly_symmetric = false;
    rep.strong_residual = std::max(rep.strong_residual, 1.0);
    rep.note = "phase undefined: first Kraus operator is orthogonal to its conjugate";
  } else {
    rep.strongly_symmetric = rep.strong_residual <= tol;
  }
  if (rep.strongly_symmetric) {
    rep.phases = std::move(phases);
    if (!rep.weakly_symmetric) rep.note = "strong verdict without weak verdict";
  } else if (rep.weakly_symmetric && rep.note.empty()) {
    rep.note = "fixed Kraus basis only; a rotated Kraus basis could still be strongly symmetric";
  }
  return rep;
}

SymmetryReport check_lindblad_symmetry(const LindbladGenerator& gen, const SymmetryGroup& group, double tol) {
  gen.validate();
  if (gen.arity() != group.qubits()) throw InvalidInput("generator and group act on different registers");
  SymmetryReport rep;
  const ComplexOperator s = lindblad_superoperator(gen);
  for (const auto& r : group.elements()) {
    const ComplexOperator sg = conjugation_superop(r);
    rep.weak_residual = std::max(rep.weak_residual, superoperator_norm(sg * s * sg.adjoint() - s));
    if (gen.hamiltonian.size() > 0) {
      rep.strong_residual = std::max(rep.strong_residual, spectral_norm(r * gen.hamiltonian - gen.hamiltonian * r));
    }
    for (const auto& l : gen.jumps) {
      rep.strong_residual = std::max(rep.strong_residual, spectral_norm(r * l - l * r));
    }
  }
  rep.weakly_symmetric = rep.weak_residual <= tol;
  rep.strongly_symmetric = rep.strong_residual <= tol;
  if (rep.strongly_symmetric) rep.phases.assign(static_cast<std::size_t>(group.order()), 0.0);

  // Small-time Kraus set should agree; dt scaled to the generator norm.
  double scale = 1.0;
  for (const auto& l : gen.jumps) scale = std::max(scale, spectral_norm(l) * spectral_norm(l));
  if (gen.hamiltonian.size() > 0) scale = std::max(scale, spectral_norm(gen.hamiltonian));
  const double dt = 1e-3 / scale;
  const KrausChannel ks = small_time_kraus(gen, dt);
  bool any_nonzero = false;
  for (const auto& k : ks.kraus_ops()) any_nonzero = any_nonzero || k.cwiseAbs().maxCoeff() > 0.0;
  if (any_nonzero) {
    const SymmetryReport kr = check_strong_symmetry(ks, group, tol);
    rep.kraus_cross_check = kr.strongly_symmetric == rep.strongly_symmetric;
  }
  if (!rep.strongly_symmetric && rep.weakly_symmetric) {
    rep.note = "jumps are exchanged by the symmetry but do not commute with it";
  }
  return rep;
}

std::vector<int> sector_permutation(const KrausChannel& channel, const SymmetryGroup& group,
                                    const CharacterTable& table, double tol) {
  const SymmetryReport rep = check_strong_symmetry(channel, group, tol);
  if (!rep.strongly_symmetric) throw PreconditionError("sector permutation needs a strongly symmetric channel");
  validate_character_table(group, table);
  const int n = table.size();
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      bool match = true;
      for (int g = 0; g < group.order() && match; ++g) {
        const Complex shifted = std::polar(1.0, rep.phases[static_cast<std::size_t>(g)]) *
                                table.characters[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)];
        match = std::abs(shifted - table.characters[static_cast<std::size_t>(b)][static_cast<std::size_t>(g)]) <= 1e-8;
      }
      if (match) {
        perm[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (perm[static_cast<std::size_t>(a)] < 0) throw PreconditionError("phases do not map characters onto characters");
  }
  return perm;
}

}  // namespace thermalizer
