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

#pragma once

#include <utility>
#include <vector>

#include "thermalizer/qcore.hpp"

namespace thermalizer {

/// exp(-(beta omega + 1)^2 / 2)
double gamma_weight(double omega, double beta);

/// Fourier transform of the Gaussian filter f(t) = e^{-t^2/beta^2} /
/// sqrt(beta sqrt(pi/2)) with the 1/sqrt(2 pi) convention:
/// sqrt(beta) (2 pi)^{-1/4} e^{-beta^2 x^2 / 4}. Even in x.
double filter_transform(double x, double beta);

/// f(t) itself.
double gaussian_filter(double t, double beta);

struct BohrDecomposition {
  RealVector eigenvalues;                 // distinct, ascending
  std::vector<ComplexOperator> projectors;
  Eigen::MatrixXd bohr_frequencies;       // nu_ij = E_i - E_j
};

/// Groups eigenvalues closer than `degeneracy_tol` into one projector.
BohrDecomposition bohr_decomposition(const ComplexOperator& h, double degeneracy_tol = 1e-9);

/// sum_ij Pi_i A Pi_j w(nu_ij - omega).
ComplexOperator exact_filtered_jump(const BohrDecomposition& bohr, const ComplexOperator& a, double omega, double beta);
ComplexOperator exact_filtered_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta);

/// Time-domain Gauss-Hermite evaluation of the defining integral.
ComplexOperator quadrature_filtered_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta,
                                         int nodes = 128);

/// (c0, c1) with c0 = w(omega), c1 = -i (beta^2 omega / 2) w(omega).
std::pair<Complex, Complex> truncation_coefficients(double omega, double beta);

/// c0 A + c1 [iH, A].
ComplexOperator truncated_jump(const ComplexOperator& h, const ComplexOperator& a, double omega, double beta);

/// How the odd-order part of the bound is assembled.
enum class OddTermForm {
  /// sum over m = 2n+1 >= 3 of the per-term bounds:
  /// C2 (sqrt(pi)/2) 2 |H| |A| (e^{4 beta^2 |H|^2} - 1).
  Summed,
  /// Closed form as printed: C2 (sqrt(pi)/2) |H|^2 |A| e^{4 beta^2 |H|^2}.
  AsPrinted,
};

struct TruncationBound {
  double delta_e = 0.0;
  double delta_o = 0.0;
  double beta = 0.0;
  double h_norm = 0.0;
  double a_norm = 0.0;

  /// delta_e e^{-beta^2 w^2/8} + delta_o |w| e^{-beta^2 w^2/4}
  double operator()(double omega) const;
};

TruncationBound truncation_bound(double h_norm, double a_norm, double beta, OddTermForm form = OddTermForm::Summed);
double truncation_error_bound(double h_norm, double a_norm, double beta, double omega,
                              OddTermForm form = OddTermForm::Summed);

struct GaussHermiteRule {
  RealVector nodes;
  RealVector weights;  // for weight e^{-x^2}
};

/// Golub-Welsch nodes and weights.
GaussHermiteRule gauss_hermite(int nodes);

/// int gamma(w) (4 delta(w) + 2 delta(w)^2) dw.
double integrated_bound(const TruncationBound& bound, int nodes = 128);

struct JumpCheckRow {
  double omega = 0.0;
  double lhs_norm = 0.0;
  double bound = 0.0;
  double gamma = 0.0;
  bool pass = false;
};

struct JumpInequalityReport {
  std::vector<JumpCheckRow> rows;
  bool all_pass = true;
  double integrated_bound = 0.0;
  TruncationBound bound;
};

inline constexpr double kMaxBetaNorm = 0.1;

/// Checks |A(w) - A~(w)| <= delta(w) on the grid. Throws PreconditionError
/// when beta |H| > 0.1.
JumpInequalityReport verify_jump_inequality(const ComplexOperator& h, const ComplexOperator& a, double beta,
                                            const std::vector<double>& omega_grid,
                                            OddTermForm form = OddTermForm::Summed);

}  // namespace thermalizer
