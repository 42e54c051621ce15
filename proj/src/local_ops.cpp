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

#include "thermalizer/local_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

using Index = Eigen::Index;

inline Index idx(std::uint64_t v) { return static_cast<Index>(v); }

// i^k (-1)^{popcount(j & phase)}: phase picked up by basis state j under P.
inline Complex pauli_phase(std::uint64_t j, std::uint64_t phase_mask, const Complex& y_phase) {
  return (std::popcount(j & phase_mask) & 1) ? -y_phase : y_phase;
}

Complex y_phase_factor(int y_count) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[y_count & 3];
}

}  // namespace

LocalLayout::LocalLayout(int register_size, std::span<const int> local_sites)
    : n(register_size), sites(local_sites.begin(), local_sites.end()) {
  const int k = arity();
  if (k == 0) throw InvalidInput("local operator needs at least one site");
  std::uint64_t mask = 0;
  for (int s : sites) {
    if (s < 0 || s >= n) throw InvalidInput("site index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - s);
    if (mask & bit) throw InvalidInput("site listed twice in one placement");
    mask |= bit;
  }
  offsets.resize(std::size_t{1} << k);
  for (std::uint64_t l = 0; l < offsets.size(); ++l) {
    std::uint64_t off = 0;
    for (int t = 0; t < k; ++t) {
      if ((l >> (k - 1 - t)) & 1U) off |= std::uint64_t{1} << (n - 1 - sites[t]);
    }
    offsets[l] = off;
  }
  const std::uint64_t d = std::uint64_t{1} << n;
  rests.reserve(d >> k);
  for (std::uint64_t i = 0; i < d; ++i) {
    if ((i & mask) == 0) rests.push_back(i);
  }
}

void conjugate_local(ComplexOperator& rho, const ComplexOperator& op, const LocalLayout& layout) {
  const Index dl = static_cast<Index>(layout.offsets.size());
  if (op.rows() != dl || op.cols() != dl) throw InvalidInput("local operator has wrong size");
  const Index d = rho.rows();
  Eigen::VectorXcd in(dl), out(dl);
  // Left multiplication, column by column.
  for (Index c = 0; c < d; ++c) {
    for (std::uint64_t r : layout.rests) {
      for (Index l = 0; l < dl; ++l) in(l) = rho(idx(r | layout.offsets[l]), c);
      out.noalias() = op * in;
      for (Index l = 0; l < dl; ++l) rho(idx(r | layout.offsets[l]), c) = out(l);
    }
  }
  // Right multiplication by op^dagger: rows transform with conj(op).
  const ComplexOperator opc = op.conjugate();
  for (std::uint64_t r : layout.rests) {
    for (Index row = 0; row < d; ++row) {
      for (Index l = 0; l < dl; ++l) in(l) = rho(row, idx(r | layout.offsets[l]));
      out.noalias() = opc * in;
      for (Index l = 0; l < dl; ++l) rho(row, idx(r | layout.offsets[l])) = out(l);
    }
  }
}

void apply_local_superoperator(ComplexOperator& rho, const ComplexOperator& superop,
                               const LocalLayout& layout) {
  const Index dl = static_cast<Index>(layout.offsets.size());
  const Index dl2 = dl * dl;
  if (superop.rows() != dl2 || superop.cols() != dl2) {
    throw InvalidInput("local superoperator has wrong size");
  }
  Eigen::VectorXcd in(dl2), out(dl2);
  for (std::uint64_t rc : layout.rests) {
    for (std::uint64_t rr : layout.rests) {
      // Column stacking: local block entry (a, b) sits at a + dl * b.
      for (Index b = 0; b < dl; ++b) {
        const Index col = idx(rc | layout.offsets[b]);
        for (Index a = 0; a < dl; ++a) in(a + dl * b) = rho(idx(rr | layout.offsets[a]), col);
      }
      out.noalias() = superop * in;
      for (Index b = 0; b < dl; ++b) {
        const Index col = idx(rc | layout.offsets[b]);
        for (Index a = 0; a < dl; ++a) rho(idx(rr | layout.offsets[a]), col) = out(a + dl * b);
      }
    }
  }
}

void apply_local(StateVector& psi, const ComplexOperator& op, const LocalLayout& layout) {
  const Index dl = static_cast<Index>(layout.offsets.size());
  if (op.rows() != dl || op.cols() != dl) throw InvalidInput("local operator has wrong size");
  Eigen::VectorXcd in(dl), out(dl);
  for (std::uint64_t r : layout.rests) {
    for (Index l = 0; l < dl; ++l) in(l) = psi(idx(r | layout.offsets[l]));
    out.noalias() = op * in;
    for (Index l = 0; l < dl; ++l) psi(idx(r | layout.offsets[l])) = out(l);
  }
}

ComplexOperator embed_operator(const ComplexOperator& op, std::span<const int> sites, int n) {
  const LocalLayout layout(n, sites);
  const Index dl = static_cast<Index>(layout.offsets.size());
  if (op.rows() != dl || op.cols() != dl) throw InvalidInput("local operator has wrong size");
  const Index d = Index{1} << n;
  ComplexOperator full = ComplexOperator::Zero(d, d);
  for (std::uint64_t r : layout.rests) {
    for (Index a = 0; a < dl; ++a) {
      for (Index b = 0; b < dl; ++b) {
        full(idx(r | layout.offsets[a]), idx(r | layout.offsets[b])) = op(a, b);
      }
    }
  }
  return full;
}

void apply_pauli_rotation(ComplexOperator& rho, const PauliString& p, double angle,
                          ComplexOperator& scratch) {
  const std::uint64_t f = p.flip_mask();
  const std::uint64_t z = p.phase_mask();
  const Complex yph = y_phase_factor(p.y_count());
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Index d = rho.rows();
  if (f == 0) {
    // Diagonal P: entries pick up e^{-i angle (p_a - p_b)}.
    const Complex same = 1.0;
    const Complex up(std::cos(2 * angle), -std::sin(2 * angle));  // p_a=+1, p_b=-1
    const Complex down = std::conj(up);
    for (Index b = 0; b < d; ++b) {
      const bool pb = std::popcount(static_cast<std::uint64_t>(b) & z) & 1;
      for (Index a = 0; a < d; ++a) {
        const bool pa = std::popcount(static_cast<std::uint64_t>(a) & z) & 1;
        if (pa != pb) rho(a, b) *= (pa ? down : up);
        else rho(a, b) *= same;
      }
    }
    return;
  }
  // U rho U^dagger = c^2 rho + s^2 P rho P + i c s (rho P - P rho)
  scratch.resize(d, d);
  const Complex ics(0.0, c * s);
  for (Index b = 0; b < d; ++b) {
    const std::uint64_t ub = static_cast<std::uint64_t>(b);
    const Complex ph_b = pauli_phase(ub, z, yph);
    const Index bf = idx(ub ^ f);
    for (Index a = 0; a < d; ++a) {
      const std::uint64_t ua = static_cast<std::uint64_t>(a);
      const Index af = idx(ua ^ f);
      const Complex ph_af = pauli_phase(ua ^ f, z, yph);
      const Complex p_rho = ph_af * rho(af, b);
      const Complex rho_p = rho(a, bf) * ph_b;
      const Complex p_rho_p = ph_af * rho(af, bf) * ph_b;
      scratch(a, b) = c * c * rho(a, b) + s * s * p_rho_p + ics * (rho_p - p_rho);
    }
  }
  rho.swap(scratch);
}

void apply_pauli_rotation(StateVector& psi, const PauliString& p, double angle) {
  const std::uint64_t f = p.flip_mask();
  const std::uint64_t z = p.phase_mask();
  const Complex yph = y_phase_factor(p.y_count());
  const Complex c = std::cos(angle);
  const Complex mis(0.0, -std::sin(angle));
  const Index d = psi.size();
  if (f == 0) {
    const Complex plus(std::cos(angle), -std::sin(angle));
    const Complex minus = std::conj(plus);
    for (Index a = 0; a < d; ++a) {
      psi(a) *= (std::popcount(static_cast<std::uint64_t>(a) & z) & 1) ? minus : plus;
    }
    return;
  }
  // Pairs (a, a^f) mix; visit each pair once.
  const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(f));
  for (Index a = 0; a < d; ++a) {
    const std::uint64_t ua = static_cast<std::uint64_t>(a);
    if (ua & top) continue;
    const std::uint64_t ub = ua ^ f;
    const Complex va = psi(a);
    const Complex vb = psi(idx(ub));
    // (P psi)_a = phase(a^f) psi_{a^f}
    const Complex pa = pauli_phase(ub, z, yph) * vb;
    const Complex pb = pauli_phase(ua, z, yph) * va;
    psi(a) = c * va + mis * pa;
    psi(idx(ub)) = c * vb + mis * pb;
  }
}

void apply_diagonal_unitary(ComplexOperator& rho, const Eigen::VectorXcd& u) {
  const Index d = rho.rows();
  for (Index b = 0; b < d; ++b) {
    const Complex ub = std::conj(u(b));
    for (Index a = 0; a < d; ++a) rho(a, b) *= u(a) * ub;
  }
}

void apply_pauli_mixture(ComplexOperator& rho, int n, int site, const std::array<double, 4>& w) {
  if (site < 0 || site >= n) throw InvalidInput("site index out of range");
  const std::uint64_t f = std::uint64_t{1} << (n - 1 - site);
  const Index d = rho.rows();
  const double same = w[0] + w[3], same_swap = w[1] + w[2];
  const double cross = w[0] - w[3], cross_swap = w[1] - w[2];
  for (Index b = 0; b < d; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    if (ub & f) continue;
    const Index bf = idx(ub | f);
    for (Index a = 0; a < d; ++a) {
      const auto ua = static_cast<std::uint64_t>(a);
      if (ua & f) continue;
      const Index af = idx(ua | f);
      const Complex r00 = rho(a, b), r11 = rho(af, bf), r10 = rho(af, b), r01 = rho(a, bf);
      rho(a, b) = same * r00 + same_swap * r11;
      rho(af, bf) = same * r11 + same_swap * r00;
      rho(af, b) = cross * r10 + cross_swap * r01;
      rho(a, bf) = cross * r01 + cross_swap * r10;
    }
  }
}

StateVector apply_pauli(const PauliString& p, const StateVector& psi) {
  const std::uint64_t f = p.flip_mask();
  const std::uint64_t z = p.phase_mask();
  const Complex yph = y_phase_factor(p.y_count()) * p.coefficient;
  StateVector out(psi.size());
  for (Index j = 0; j < psi.size(); ++j) {
    const std::uint64_t uj = static_cast<std::uint64_t>(j);
    out(idx(uj ^ f)) = pauli_phase(uj, z, yph) * psi(j);
  }
  return out;
}

}  // namespace thermalizer
