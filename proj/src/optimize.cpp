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

#include "thermalizer/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "thermalizer/errors.hpp"

namespace thermalizer {

namespace {

using Vec = Eigen::VectorXd;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }
Vec to_eigen(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

// Counts calls and remembers the best point seen.
struct Counted {
  explicit Counted(const Objective& fn) : f(fn) {}
  const Objective& f;
  long calls = 0;
  long cap = 0;
  double best = std::numeric_limits<double>::infinity();
  Vec best_x;

  double operator()(const Vec& x) {
    ++calls;
    const double v = f(to_std(x));
    if (v < best) {
      best = v;
      best_x = x;
    }
    return v;
  }
  bool exhausted() const { return cap > 0 && calls >= cap; }
};

Vec gradient(Counted& f, const Vec& x, double h) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    xp(i) = xi + h;
    const double fp = f(xp);
    xp(i) = xi - h;
    const double fm = f(xp);
    xp(i) = xi;
    g(i) = (fp - fm) / (2 * h);
  }
  return g;
}

bool window_converged(const std::vector<double>& trace, const OptimizerOptions& o) {
  const auto w = static_cast<std::size_t>(o.window);
  if (trace.size() <= w) return false;
  const double now = trace.back();
  const double then = trace[trace.size() - 1 - w];
  return std::abs(then - now) <= o.ftol * std::max(1.0, std::abs(now));
}

void check_options(const OptimizerOptions& o) {
  if (o.max_iters < 0 || o.window < 1 || !(o.ftol >= 0) || !(o.fd_step > 0) || o.history < 1) {
    throw InvalidInput("invalid optimizer options");
  }
}

}  // namespace

const char* optimizer_name(OptimizerKind k) { return k == OptimizerKind::Lbfgs ? "lbfgs" : "nelder_mead"; }

OptimizerKind parse_optimizer(const std::string& name) {
  if (name == "lbfgs") return OptimizerKind::Lbfgs;
  if (name == "nelder_mead" || name == "simplex") return OptimizerKind::NelderMead;
  throw InvalidInput("unknown optimizer: " + name);
}

std::vector<double> finite_difference_gradient(const Objective& f, const std::vector<double>& x, double step) {
  Counted c{f};
  return to_std(gradient(c, to_eigen(x), step));
}

OptimizeResult minimize_lbfgs(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  check_options(opts);
  Counted fn{f};
  fn.cap = opts.max_evaluations;
  Vec x = to_eigen(x0);
  double fx = fn(x);
  OptimizeResult res;
  res.trace.push_back(fx);
  if (x.size() == 0) {
    res.converged = true;
    res.x = x0;
    res.fx = fx;
    res.evaluations = fn.calls;
    return res;
  }
  Vec g = gradient(fn, x, opts.fd_step);
  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int it = 0; it < opts.max_iters && !fn.exhausted(); ++it) {
    if (g.norm() <= 1e-12 * std::max(1.0, std::abs(fx))) {
      res.converged = true;
      break;
    }
    // Two-loop recursion.
    Vec q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(q);
      q -= alpha[k] * y_hist[k];
    }
    if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double b = rho_hist[k] * y_hist[k].dot(q);
      q += (alpha[k] - b) * s_hist[k];
    }
    Vec dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0)) {
      dir = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }
    // Armijo backtracking.
    double step = 1.0;
    if (s_hist.empty()) step = std::min(1.0, 1.0 / std::max(1e-12, g.norm()));
    Vec xn;
    double fn_val = fx;
    bool accepted = false;
    for (int ls = 0; ls < 40 && !fn.exhausted(); ++ls) {
      xn = x + step * dir;
      fn_val = fn(xn);
      if (std::isfinite(fn_val) && fn_val <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++res.iterations;
    if (!accepted) {
      // No descent along the quasi-Newton direction: restart memory once,
      // otherwise give up at a stationary point of the FD model.
      if (!s_hist.empty()) {
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        res.trace.push_back(fx);
        continue;
      }
      res.trace.push_back(fx);
      res.converged = true;
      break;
    }
    const Vec gn = gradient(fn, xn, opts.fd_step);
    const Vec s = xn - x;
    const Vec y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = xn;
    fx = fn_val;
    g = gn;
    res.trace.push_back(fx);
    if (window_converged(res.trace, opts)) {
      res.converged = true;
      break;
    }
  }
  // Report the best evaluated point (it may be a gradient probe).
  if (fn.best < fx) {
    x = fn.best_x;
    fx = fn.best;
    res.trace.back() = std::min(res.trace.back(), fx);
  }
  res.x = to_std(x);
  res.fx = fx;
  res.evaluations = fn.calls;
  return res;
}

OptimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  check_options(opts);
  Counted fn{f};
  fn.cap = opts.max_evaluations;
  const auto n = static_cast<Eigen::Index>(x0.size());
  OptimizeResult res;
  std::vector<Vec> simplex(static_cast<std::size_t>(n + 1), to_eigen(x0));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec& v = simplex[static_cast<std::size_t>(i + 1)];
    v(i) += (std::abs(v(i)) > 1e-8) ? 0.1 * std::abs(v(i)) + 0.1 : 0.25;
  }
  std::vector<double> vals;
  for (const auto& v : simplex) vals.push_back(fn(v));
  std::vector<std::size_t> order(simplex.size());
  auto sort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Vec> s2;
    std::vector<double> v2;
    for (auto i : order) {
      s2.push_back(simplex[i]);
      v2.push_back(vals[i]);
    }
    simplex.swap(s2);
    vals.swap(v2);
  };
  sort();
  res.trace.push_back(vals.front());
  for (int it = 0; it < opts.max_iters && n > 0 && !fn.exhausted(); ++it) {
    Vec centroid = Vec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(n);
    Vec& worst = simplex.back();
    const Vec xr = centroid + (centroid - worst);
    const double fr = fn(xr);
    if (fr < vals.front()) {
      const Vec xe = centroid + 2.0 * (centroid - worst);
      const double fe = fn(xe);
      if (fe < fr) {
        worst = xe;
        vals.back() = fe;
      } else {
        worst = xr;
        vals.back() = fr;
      }
    } else if (fr < vals[vals.size() - 2]) {
      worst = xr;
      vals.back() = fr;
    } else {
      const bool outside = fr < vals.back();
      const Vec xc = outside ? Vec(centroid + 0.5 * (xr - centroid)) : Vec(centroid + 0.5 * (worst - centroid));
      const double fc = fn(xc);
      if (fc < std::min(fr, vals.back())) {
        worst = xc;
        vals.back() = fc;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          vals[i] = fn(simplex[i]);
        }
      }
    }
    sort();
    ++res.iterations;
    res.trace.push_back(vals.front());
    if (window_converged(res.trace, opts) && std::abs(vals.back() - vals.front()) <=
                                                 opts.ftol * std::max(1.0, std::abs(vals.front()))) {
      res.converged = true;
      break;
    }
  }
  if (n == 0) res.converged = true;
  res.x = to_std(simplex.front());
  res.fx = vals.front();
  res.evaluations = fn.calls;
  return res;
}

OptimizeResult minimize(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  return opts.kind == OptimizerKind::Lbfgs ? minimize_lbfgs(f, std::move(x0), opts)
                                           : minimize_nelder_mead(f, std::move(x0), opts);
}

}  // namespace thermalizer
