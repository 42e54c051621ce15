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

#include "thermalizer/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "thermalizer/channels.hpp"
#include "thermalizer/errors.hpp"
#include "thermalizer/local_ops.hpp"
#include "thermalizer/models.hpp"

namespace thermalizer {

const char* channel_family_name(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::Identity: return "identity";
    case ChannelFamily::Bitflip: return "bitflip";
    case ChannelFamily::Phaseflip: return "phaseflip";
    case ChannelFamily::Depolarizing: return "depolarizing";
    case ChannelFamily::IsingProjector: return "ising_projector";
    case ChannelFamily::TfimJump: return "tfim_jump";
    case ChannelFamily::HeisenbergPair: return "heisenberg_pair";
  }
  return "?";
}

ChannelFamily parse_channel_family(const std::string& name) {
  for (ChannelFamily f : {ChannelFamily::Identity, ChannelFamily::Bitflip, ChannelFamily::Phaseflip,
                          ChannelFamily::Depolarizing, ChannelFamily::IsingProjector,
                          ChannelFamily::TfimJump, ChannelFamily::HeisenbergPair}) {
    if (name == channel_family_name(f)) return f;
  }
  throw InvalidInput("unknown channel family: " + name);
}

int channel_family_arity(ChannelFamily f) {
  return (f == ChannelFamily::IsingProjector || f == ChannelFamily::HeisenbergPair) ? 2 : 1;
}

int channel_family_parameters(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::Identity: return 0;
    case ChannelFamily::TfimJump:
    case ChannelFamily::HeisenbergPair: return 2;
    default: return 1;
  }
}

std::vector<ParameterBounds> ChannelTemplate::resolved_bounds() const {
  std::vector<ParameterBounds> def;
  switch (family) {
    case ChannelFamily::Identity: break;
    case ChannelFamily::Bitflip:
    case ChannelFamily::Phaseflip: def = {{0.0, 0.5}}; break;
    case ChannelFamily::Depolarizing:
    case ChannelFamily::IsingProjector: def = {{0.0, 1.0}}; break;
    case ChannelFamily::TfimJump: def = {{0.0, 2.0}, {-1.0, 1.0}}; break;
    case ChannelFamily::HeisenbergPair: def = {{0.0, 2.0}, {0.0, 2.0}}; break;
  }
  if (bounds.empty()) return def;
  if (bounds.size() != def.size()) throw InvalidInput("wrong number of bounds for channel family");
  for (const auto& b : bounds) {
    if (!(b.lower <= b.upper)) throw InvalidInput("channel bounds must satisfy lower <= upper");
  }
  return bounds;
}

bool AnsatzSpec::size_parametric() const {
  return std::none_of(generators.begin(), generators.end(), [](const auto& g) { return g.per_site; }) &&
         std::none_of(channels.begin(), channels.end(), [](const auto& c) { return c.per_site; });
}

AnsatzSpec AnsatzSpec::resized(int new_n) const {
  if (!size_parametric()) throw UnsupportedInput("ansatz is not size parametric");
  AnsatzSpec out = *this;
  out.n = new_n;
  return out;
}

int AnsatzSpec::theta_per_layer() const {
  int count = 0;
  for (const auto& g : generators) count += g.per_site ? static_cast<int>(g.terms.size()) * n : 1;
  return count;
}

int AnsatzSpec::lambda_per_layer() const {
  int count = 0;
  for (const auto& c : channels) {
    count += channel_family_parameters(c.family) * (c.per_site ? n : 1);
  }
  return count;
}

std::vector<ParameterBounds> AnsatzSpec::lambda_bounds() const {
  std::vector<ParameterBounds> out;
  for (int j = 0; j < m; ++j) {
    for (const auto& c : channels) {
      const auto b = c.resolved_bounds();
      const int copies = c.per_site ? n : 1;
      for (int s = 0; s < copies; ++s) out.insert(out.end(), b.begin(), b.end());
    }
  }
  return out;
}

GeneratorTemplate mixing_generator(bool per_site) { return {"mixing", {{"X", -1.0}}, per_site}; }
GeneratorTemplate coupling_generator(bool per_site) { return {"coupling", {{"ZZ", -1.0}}, per_site}; }
GeneratorTemplate longitudinal_generator(bool per_site) { return {"longitudinal", {{"Z", -1.0}}, per_site}; }
GeneratorTemplate ising_problem_generator(double J, double g) {
  return {"ising", {{"ZZ", -J}, {"Z", -g}}, false};
}
GeneratorTemplate heisenberg_problem_generator(double sign) {
  return {"heisenberg", {{"XX", sign}, {"YY", sign}, {"ZZ", sign}}, false};
}

std::vector<PauliString> place_generator(const GeneratorTemplate& gen, int n) {
  std::vector<PauliString> out;
  for (const auto& [pattern, coeff] : gen.terms) {
    const int len = static_cast<int>(pattern.size());
    if (len == 0 || len > n) throw InvalidInput("generator pattern does not fit the register");
    for (char c : pattern) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') throw InvalidInput("bad Pauli label in generator");
    }
    for (int k = 0; k < n; ++k) {
      PauliString p{std::string(static_cast<std::size_t>(n), 'I'), coeff};
      for (int t = 0; t < len; ++t) p.ops[static_cast<std::size_t>((k + t) % n)] = pattern[static_cast<std::size_t>(t)];
      out.push_back(std::move(p));
    }
  }
  return out;
}

double squash(double x, const ParameterBounds& b) {
  return b.lower + (b.upper - b.lower) / (1.0 + std::exp(-x));
}

double unsquash(double value, const ParameterBounds& b) {
  const double width = b.upper - b.lower;
  if (width <= 0.0) return 0.0;
  const double u = std::clamp((value - b.lower) / width, 1e-12, 1.0 - 1e-12);
  return std::log(u / (1.0 - u));
}

ParameterVector params_from_raw(const AnsatzSpec& spec, std::span<const double> raw) {
  const auto nt = static_cast<std::size_t>(spec.theta_count());
  const auto bounds = spec.lambda_bounds();
  if (raw.size() != nt + bounds.size()) throw InvalidInput("raw parameter vector has wrong length");
  ParameterVector p;
  p.theta.assign(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(nt));
  p.lambda.resize(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) p.lambda[i] = squash(raw[nt + i], bounds[i]);
  return p;
}

std::vector<double> raw_from_params(const AnsatzSpec& spec, const ParameterVector& params) {
  const auto bounds = spec.lambda_bounds();
  if (params.theta.size() != static_cast<std::size_t>(spec.theta_count()) || params.lambda.size() != bounds.size()) {
    throw InvalidInput("parameter count does not match the ansatz");
  }
  std::vector<double> raw = params.theta;
  for (std::size_t i = 0; i < bounds.size(); ++i) raw.push_back(unsquash(params.lambda[i], bounds[i]));
  return raw;
}

std::vector<double> midpoint_lambda(const AnsatzSpec& spec) {
  std::vector<double> out;
  for (const auto& b : spec.lambda_bounds()) out.push_back(0.5 * (b.lower + b.upper));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class GenKind { Diagonal, Commuting, Dense, PerSite };

struct CompiledGenerator {
  GenKind kind = GenKind::Diagonal;
  std::vector<PauliString> terms;
  RealVector diagonal;
  HermitianEigen eig;
};

struct CompiledChannel {
  ChannelTemplate tmpl;
  std::vector<ParameterBounds> bounds;
  std::vector<LocalLayout> layouts;
  std::vector<int> sites;  // first site of each placement
};

CompiledGenerator compile_generator(const GeneratorTemplate& g, int n) {
  CompiledGenerator c;
  c.terms = place_generator(g, n);
  if (g.per_site) {
    c.kind = GenKind::PerSite;
    return c;
  }
  PauliSum sum{n, c.terms};
  if (sum.is_diagonal()) {
    c.kind = GenKind::Diagonal;
    c.diagonal = sum.diagonal();
  } else if (sum.is_commuting()) {
    c.kind = GenKind::Commuting;
  } else {
    c.kind = GenKind::Dense;
    c.eig = hermitian_eigen(sum.to_matrix());
  }
  return c;
}

Eigen::VectorXcd phases(const RealVector& diag, double theta) {
  Eigen::VectorXcd u(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) u(i) = std::polar(1.0, -theta * diag(i));
  return u;
}

ComplexOperator dense_unitary(const HermitianEigen& eig, double theta) {
  return eig.vectors * phases(eig.values, theta).asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

struct CompiledAnsatz::Impl {
  AnsatzSpec spec;
  std::vector<CompiledGenerator> gens;
  std::vector<CompiledChannel> chans;
  std::vector<ParameterBounds> lambda_bounds;
};

CompiledAnsatz::CompiledAnsatz(AnsatzSpec spec) : impl_(std::make_unique<Impl>()) {
  if (spec.n < 1 || spec.n > kMaxQubits) throw InvalidInput("register size out of range");
  if (spec.m < 0) throw InvalidInput("layer count must be >= 0");
  impl_->spec = std::move(spec);
  const int n = impl_->spec.n;
  for (const auto& g : impl_->spec.generators) impl_->gens.push_back(compile_generator(g, n));
  for (const auto& c : impl_->spec.channels) {
    CompiledChannel cc;
    cc.tmpl = c;
    cc.bounds = c.resolved_bounds();
    const int arity = channel_family_arity(c.family);
    if (arity > n) throw InvalidInput("channel does not fit the register");
    for (int k = 0; k < n; ++k) {
      std::vector<int> sites{k};
      if (arity == 2) sites.push_back((k + 1) % n);
      cc.layouts.emplace_back(n, sites);
      cc.sites.push_back(k);
    }
    impl_->chans.push_back(std::move(cc));
  }
  impl_->lambda_bounds = impl_->spec.lambda_bounds();
}

CompiledAnsatz::~CompiledAnsatz() = default;
CompiledAnsatz::CompiledAnsatz(CompiledAnsatz&&) noexcept = default;
CompiledAnsatz& CompiledAnsatz::operator=(CompiledAnsatz&&) noexcept = default;

const AnsatzSpec& CompiledAnsatz::spec() const { return impl_->spec; }

bool CompiledAnsatz::all_channels_identity() const {
  return std::all_of(impl_->chans.begin(), impl_->chans.end(),
                     [](const auto& c) { return c.tmpl.family == ChannelFamily::Identity; });
}

namespace {

void check_counts(const AnsatzSpec& spec, const ParameterVector& p) {
  if (p.theta.size() != static_cast<std::size_t>(spec.theta_count()) ||
      p.lambda.size() != static_cast<std::size_t>(spec.lambda_count())) {
    throw InvalidInput("parameter count does not match the ansatz");
  }
  for (double t : p.theta) {
    if (!std::isfinite(t)) throw InvalidInput("non-finite angle");
  }
  for (double l : p.lambda) {
    if (!std::isfinite(l)) throw InvalidInput("non-finite channel parameter");
  }
}

std::array<double, 4> pauli_weights(ChannelFamily f, double p) {
  switch (f) {
    case ChannelFamily::Bitflip: return {1 - p, p, 0, 0};
    case ChannelFamily::Phaseflip: return {1 - p, 0, 0, p};
    case ChannelFamily::Depolarizing: return {1 - 0.75 * p, p / 4, p / 4, p / 4};
    default: return {1, 0, 0, 0};
  }
}

// Local superoperator of a non-Pauli family for the given parameter values.
ComplexOperator family_superoperator(const ChannelTemplate& t, const double* v) {
  switch (t.family) {
    case ChannelFamily::IsingProjector: return channel_superoperator(ising_projector_channel(v[0]));
    case ChannelFamily::TfimJump: return lindblad_propagator(tfim_jump(v[0], v[1], t.hadamard_frame), t.time);
    case ChannelFamily::HeisenbergPair: return lindblad_propagator(heisenberg_pair_jumps(v[0], v[1]), t.time);
    default: throw InvalidInput("family has no superoperator form");
  }
}

}  // namespace

DensityMatrix CompiledAnsatz::evaluate(const ParameterVector& params) const {
  const AnsatzSpec& spec = impl_->spec;
  check_counts(spec, params);
  const int n = spec.n;
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexOperator rho = ComplexOperator::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0));
  ComplexOperator scratch(d, d);
  std::size_t ti = 0, li = 0;
  std::vector<double> vals;
  for (int j = 0; j < spec.m; ++j) {
    for (const auto& g : impl_->gens) {
      switch (g.kind) {
        case GenKind::Diagonal:
          apply_diagonal_unitary(rho, phases(g.diagonal, params.theta[ti++]));
          break;
        case GenKind::Commuting: {
          const double th = params.theta[ti++];
          for (const auto& p : g.terms) apply_pauli_rotation(rho, p, th * p.coefficient, scratch);
          break;
        }
        case GenKind::Dense: {
          const ComplexOperator u = dense_unitary(g.eig, params.theta[ti++]);
          scratch.noalias() = u * rho;
          rho.noalias() = scratch * u.adjoint();
          break;
        }
        case GenKind::PerSite:
          for (const auto& p : g.terms) apply_pauli_rotation(rho, p, params.theta[ti++] * p.coefficient, scratch);
          break;
      }
    }
    for (const auto& c : impl_->chans) {
      const int np = channel_family_parameters(c.tmpl.family);
      const int groups = c.tmpl.per_site ? n : 1;
      vals.assign(static_cast<std::size_t>(np * groups), 0.0);
      for (auto& v : vals) {
        const auto& b = impl_->lambda_bounds[li];
        v = std::clamp(params.lambda[li], b.lower, b.upper);
        ++li;
      }
      if (c.tmpl.family == ChannelFamily::Identity) continue;
      const bool pauli = channel_family_arity(c.tmpl.family) == 1 && np == 1;
      ComplexOperator shared;
      if (!pauli && !c.tmpl.per_site) shared = family_superoperator(c.tmpl, vals.data());
      for (std::size_t k = 0; k < c.layouts.size(); ++k) {
        const double* v = vals.data() + (c.tmpl.per_site ? k * static_cast<std::size_t>(np) : 0);
        if (pauli) {
          apply_pauli_mixture(rho, n, c.sites[k], pauli_weights(c.tmpl.family, v[0]));
        } else if (c.tmpl.per_site) {
          apply_local_superoperator(rho, family_superoperator(c.tmpl, v), c.layouts[k]);
        } else {
          apply_local_superoperator(rho, shared, c.layouts[k]);
        }
      }
    }
  }
  return DensityMatrix::trusted(std::move(rho));
}

StateVector CompiledAnsatz::evaluate_pure(const ParameterVector& params) const {
  if (!all_channels_identity()) throw UnsupportedInput("pure evaluation needs identity channels");
  const AnsatzSpec& spec = impl_->spec;
  check_counts(spec, params);
  StateVector psi = plus_state(spec.n);
  std::size_t ti = 0;
  for (int j = 0; j < spec.m; ++j) {
    for (const auto& g : impl_->gens) {
      switch (g.kind) {
        case GenKind::Diagonal:
          psi = psi.cwiseProduct(phases(g.diagonal, params.theta[ti++]));
          break;
        case GenKind::Commuting: {
          const double th = params.theta[ti++];
          for (const auto& p : g.terms) apply_pauli_rotation(psi, p, th * p.coefficient);
          break;
        }
        case GenKind::Dense:
          psi = dense_unitary(g.eig, params.theta[ti++]) * psi;
          break;
        case GenKind::PerSite:
          for (const auto& p : g.terms) apply_pauli_rotation(psi, p, params.theta[ti++] * p.coefficient);
          break;
      }
    }
  }
  return psi;
}

DensityMatrix evaluate_ansatz(const AnsatzSpec& spec, const ParameterVector& params) {
  return CompiledAnsatz(spec).evaluate(params);
}

}  // namespace thermalizer
