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

#include "thermalizer/qoft.hpp"

#include <cmath>
#include <numbers>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be positive and finite");
}

void check_pair(const ComplexOperator& h, const ComplexOperator& a) {
  if (h.rows() != h.cols() || a.rows() != h.rows() || a.cols() != h.cols()) throw InvalidInput("H and A must be square and equal size");
  if (!is_hermitian(h)) throw InvalidInput("H must be Hermitian");
}

}  // namespace

double gamma_weight(double omega, double beta) {
  const double x = beta * omega + 1.0;
  return std::exp(-0.5 * x * x);
}

double filter_transform(double x, double beta) {
  check_beta(beta);
  return std::sqrt(beta) * std::pow(2.0 * kPi, -0.25) * std::exp(-0.25 * beta * beta * x * x);
}

double gaussian_filter(double t, double beta) {
  check_beta(beta);
  return std::exp(-t * t / (beta * beta)) / std::sqrt(beta * std::sqrt(kPi / 2.0));
}

BohrDecomposition bohr_decomposition(const ComplexOperator& h, double degeneracy_tol) {
  const HermitianEigen eig = hermitian_eigen(h);
  BohrDecomposition b;
  std::vector<double> values;
  const Eigen::Index d = h.rows();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && eig.values(end) - eig.values(end - 1) <= degeneracy_tol) ++end;
    const auto block = eig.vectors.middleCols(start, end - start);
    b.projectors.push_back(block * block.adjoint());
    values.push_back(eig.values.segment(start, end - start).mean());
    start = end;
  }
  b.eigenvalues = Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  const auto k = b.eigenvalues.size();
  b.bohr_frequencies.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) b.bohr_frequencies(i, j) = b.eigenvalues(i) - b.eigenvalues(j);
  }
  return b;
}

ComplexOperator exact_filtered_jump(const BohrDecomposition& bohr, const ComplexOperator& a, double omega, double beta) {
  const Eigen::Index d = a.rows();
  ComplexOperator out = ComplexOperator::Zero(d, d);
  const auto k = static_cast<Eigen::Index>(bohr.projectors.size());
  for (Eigen::Index j = 0; j < k; ++j) {
    const ComplexOperator a_pj = a * bohr.projectors[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < k; ++i) {
      const double w = filter_transform(bohr.bohr_frequencies(i, j) - omega, beta);
      out.noalias() += w * (bohr.projectors[static_cast<std::size_t>(i)] * a_pj);
    }
  }
  return out;
}

ComplexOperator exact_filtered_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta) {
  check_pair(h, a);
  check_beta(beta);
  return exact_filtered_jump(bohr_decomposition(h), a, omega, beta);
}

GaussHermiteRule gauss_hermite(int nodes) {
  if (nodes < 1) throw InvalidInput("need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussHermiteRule r;
  r.nodes = es.eigenvalues();
  r.weights = std::sqrt(kPi) * es.eigenvectors().row(0).transpose().array().square();
  return r;
}

ComplexOperator quadrature_filtered_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta,
                                         int nodes) {
  check_pair(h, a);
  check_beta(beta);
  const HermitianEigen eig = hermitian_eigen(h);
  // Heisenberg picture in the eigenbasis: (V^dag A V)_ij e^{i (E_i - E_j) t}.
  const ComplexOperator a_eig = eig.vectors.adjoint() * a * eig.vectors;
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const Eigen::Index d = h.rows();
  ComplexOperator acc = ComplexOperator::Zero(d, d);
  // t = beta x, e^{-t^2/beta^2} dt = beta e^{-x^2} dx
  const double norm = beta / std::sqrt(beta * std::sqrt(kPi / 2.0)) / std::sqrt(2.0 * kPi);
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double t = beta * rule.nodes(q);
    const double w = rule.weights(q) * norm;
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        acc(i, j) += w * a_eig(i, j) * std::polar(1.0, (eig.values(i) - eig.values(j) - omega) * t);
      }
    }
  }
  return eig.vectors * acc * eig.vectors.adjoint();
}

std::pair<Complex, Complex> truncation_coefficients(double omega, double beta) {
  const double c0 = filter_transform(omega, beta);
  return {Complex(c0, 0.0), Complex(0.0, -0.5 * beta * beta * omega * c0)};
}

ComplexOperator truncated_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta) {
  check_pair(h, a);
  check_beta(beta);
  const auto [c0, c1] = truncation_coefficients(omega, beta);
  const ComplexOperator comm = Complex(0.0, 1.0) * (h * a - a * h);
  return c0 * a + c1 * comm;
}

double TruncationBound::operator()(double omega) const {
  const double b2w2 = beta * beta * omega * omega;
  return delta_e * std::exp(-b2w2 / 8.0) + delta_o * std::abs(omega) * std::exp(-b2w2 / 4.0);
}

TruncationBound truncation_bound(double h_norm, double a_norm, double beta, OddTermForm form) {
  check_beta(beta);
  if (!(h_norm >= 0.0) || !(a_norm >= 0.0)) throw InvalidInput("norms must be nonnegative");
  const double c1 = std::pow(2.0 * beta * beta / kPi, 0.25);
  const double c2 = std::pow(beta, 2.5) / std::pow(32.0 * kPi, 0.25);
  const double bh = beta * h_norm;
  const double grow = std::exp(4.0 * bh * bh);
  TruncationBound b;
  b.beta = beta;
  b.h_norm = h_norm;
  b.a_norm = a_norm;
  b.delta_e = c1 * std::pow(kPi, 0.25) * bh * bh * a_norm * std::exp(bh * bh) * grow;
  if (form == OddTermForm::AsPrinted) {
    b.delta_o = c2 * (std::sqrt(kPi) / 2.0) * h_norm * h_norm * a_norm * grow;
  } else {
    b.delta_o = c2 * (std::sqrt(kPi) / 2.0) * 2.0 * h_norm * a_norm * std::expm1(4.0 * bh * bh);
  }
  return b;
}

double truncation_error_bound(double h_norm, double a_norm, double beta, double omega, OddTermForm form) {
  return truncation_bound(h_norm, a_norm, beta, form)(omega);
}

double integrated_bound(const TruncationBound& bound, int nodes) {
  // beta w + 1 = sqrt(2) x turns gamma into e^{-x^2}.
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const double beta = bound.beta;
  double s = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double omega = (std::sqrt(2.0) * rule.nodes(q) - 1.0) / beta;
    const double d = bound(omega);
    s += rule.weights(q) * (4.0 * d + 2.0 * d * d);
  }
  return s * std::sqrt(2.0) / beta;
}

JumpInequalityReport verify_jump_inequality(const ComplexOperator& h, const ComplexOperator& a, double beta,
                                            const std::vector<double>& omega_grid, OddTermForm form) {
  check_pair(h, a);
  check_beta(beta);
  const double hn = spectral_norm(h);
  if (beta * hn > kMaxBetaNorm * (1.0 + 1e-12)) {
    throw PreconditionError("jump inequality is only checked for beta |H| <= 0.1");
  }
  JumpInequalityReport rep;
  rep.bound = truncation_bound(hn, spectral_norm(a), beta, form);
  const BohrDecomposition bohr = bohr_decomposition(h);
  for (double w : omega_grid) {
    JumpCheckRow row;
    row.omega = w;
    row.lhs_norm = spectral_norm(exact_filtered_jump(bohr, a, w, beta) - truncated_jump(h, a, w, beta));
    row.bound = rep.bound(w);
    row.gamma = gamma_weight(w, beta);
    row.pass = row.lhs_norm <= row.bound;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  rep.integrated_bound = integrated_bound(rep.bound);
  return rep;
}

}  // namespace thermalizer
