// Copyright 2026 The whmeo Authors
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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "whmeo/entropy.hpp"
#include "whmeo/random.hpp"
#include "whmeo/wh_core.hpp"

namespace whmeo {

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  double initial_step = 0.1;
  double step_shrink = 0.5;
  /// Stop once an accepted step lowers the objective by less than this.
  double converge_tol = 1e-12;
  std::uint64_t seed = 0;
  /// Forward-difference step on each real coordinate.
  double fd_step = 1e-6;
  /// Stop once the trial step falls below this.
  double min_step = 1e-14;
  /// Restarts run on this many threads; results do not depend on it.
  std::size_t threads = 1;
  /// OrderRange::unrestricted admits p > 2, where additivity is not claimed.
  OrderRange order_range = OrderRange::standard;

  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::invalid_argument, "optimizer config: " + what); };
    if (restarts < 1) fail("restarts must be >= 1");
    if (max_iters < 1) fail("max_iters must be >= 1");
    if (!(initial_step > 0.0)) fail("initial_step must be > 0");
    if (!(step_shrink > 0.0 && step_shrink < 1.0)) fail("step_shrink must lie in (0, 1)");
    if (!(converge_tol > 0.0)) fail("converge_tol must be > 0");
    if (!(fd_step > 0.0)) fail("fd_step must be > 0");
    if (!(min_step > 0.0)) fail("min_step must be > 0");
    if (threads < 1) fail("threads must be >= 1");
  }
};

struct OptResult {
  double best_value = 0.0;
  PureState best_state;
  double p = 1.0;
  SiteDims dims;
  std::vector<double> per_restart_values;
  std::vector<std::size_t> iterations_used;
  /// Objective after the start and after every accepted step, per restart.
  std::vector<std::vector<double>> accepted_values;
};

/// Called with (restart, state, objective) for each restart's start point and
/// every accepted step. Must be thread-safe when threads > 1.
using VisitObserver = std::function<void(std::size_t, const PureState&, double)>;

namespace detail {

struct RestartOutcome {
  std::optional<PureState> state;
  double value = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

inline Vector normalized_copy(const Vector& v) {
  Vector out = v;
  const double n = vector_norm(out);
  for (auto& z : out) z /= n;
  return out;
}

/// Descent on the unit sphere from a random start. The gradient is a forward
/// difference over the 2D real coordinates, projected onto the tangent space;
/// steps of the current length are taken along the normalized negative
/// gradient, renormalized, and accepted only if they lower the objective.
/// Rejections shrink the step; acceptances grow it back up to initial_step.
inline RestartOutcome descend(const ProductChannel& pc, double p, const OptimizerConfig& cfg, std::size_t restart,
                              const VisitObserver& observer) {
  const SiteDims& dims = pc.dims();
  const std::size_t n = dims.total();
  auto objective = [&](const Vector& x) {
    return entropy_output(pc, PureState(x, dims), p, cfg.order_range);
  };

  Rng rng(mix_seed(cfg.seed, restart));
  Vector x = normalized_copy(gaussian_vector(n, rng));
  double fx = objective(x);
  RestartOutcome out;
  out.trace.push_back(fx);
  if (observer) observer(restart, PureState(x, dims), fx);

  std::vector<double> grad(2 * n);
  double step = cfg.initial_step;
  std::size_t iter = 0;
  while (iter < cfg.max_iters) {
    ++iter;
    Vector probe = x;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      Complex& z = probe[k / 2];
      const Complex saved = z;
      z += (k % 2 == 0) ? Complex(cfg.fd_step, 0.0) : Complex(0.0, cfg.fd_step);
      grad[k] = (objective(normalized_copy(probe)) - fx) / cfg.fd_step;
      z = saved;
    }
    // tangent projection: remove the component along x (as a real 2n-vector)
    double radial = 0.0;
    for (std::size_t i = 0; i < n; ++i) radial += grad[2 * i] * x[i].real() + grad[2 * i + 1] * x[i].imag();
    double gnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      grad[2 * i] -= radial * x[i].real();
      grad[2 * i + 1] -= radial * x[i].imag();
      gnorm += grad[2 * i] * grad[2 * i] + grad[2 * i + 1] * grad[2 * i + 1];
    }
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0)) break;

    bool accepted = false;
    Vector y;
    double fy = fx;
    while (step >= cfg.min_step) {
      y = x;
      for (std::size_t i = 0; i < n; ++i) y[i] -= (step / gnorm) * Complex(grad[2 * i], grad[2 * i + 1]);
      y = normalized_copy(y);
      fy = objective(y);
      if (fy < fx) {
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) break;

    const double change = fx - fy;
    x = std::move(y);
    fx = fy;
    out.trace.push_back(fx);
    if (observer) observer(restart, PureState(x, dims), fx);
    if (change < cfg.converge_tol) break;
    step = std::min(step / cfg.step_shrink, cfg.initial_step);
  }
  out.state.emplace(std::move(x), dims);
  out.value = fx;
  out.iterations = iter;
  return out;
}

}  // namespace detail

/// Upper bound on inf_phi S_p(Gamma(|phi><phi|)) from multi-start descent.
/// Deterministic in cfg.seed; restart k draws its start from mix_seed(seed, k).
inline OptResult minimize_entropy_output(const ProductChannel& pc, double p, const OptimizerConfig& cfg,
                                         const VisitObserver& observer = {}) {
  check_order(p, cfg.order_range, true);
  cfg.validate();
  require_total_at_most(pc.dims());

  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  const std::size_t workers = std::min(cfg.threads, cfg.restarts);
  if (workers <= 1) {
    for (std::size_t k = 0; k < cfg.restarts; ++k) outcomes[k] = detail::descend(pc, p, cfg, k, observer);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < cfg.restarts; k = next++) outcomes[k] = detail::descend(pc, p, cfg, k, observer);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < outcomes.size(); ++k) {
    if (outcomes[k].value < outcomes[best].value) best = k;
  }
  OptResult r{outcomes[best].value, *outcomes[best].state, p, pc.dims(), {}, {}, {}};
  for (auto& o : outcomes) {
    r.per_restart_values.push_back(o.value);
    r.iterations_used.push_back(o.iterations);
    r.accepted_values.push_back(std::move(o.trace));
  }
  return r;
}

/// Estimate of nu_p = sup_phi ||Gamma(|phi><phi|)||_p, read off at the
/// minimizer of S_p (the two objectives are related by a decreasing map).
inline double maximize_pnorm(const ProductChannel& pc, double p, const OptimizerConfig& cfg) {
  check_order(p, cfg.order_range, false);
  const OptResult r = minimize_entropy_output(pc, p, cfg);
  return schatten_p_norm(product_apply(pc, DensityMatrix::from_pure(r.best_state)).matrix(), p);
}

inline constexpr double kGapLowerTol = 1e-6;
inline constexpr double kGapUpperTol = 1e-4;

struct AdditivityCertificate {
  SiteDims dims;
  double p = 1.0;
  double meo_product_estimate = 0.0;
  double meo_sum_of_singles = 0.0;
  /// estimate - sum
  double gap = 0.0;
  /// max_L (1 - tr rho_L^2) of the minimizer; zero iff it is a product state.
  double argmin_product_distance = 0.0;
  double gap_lower_tol = kGapLowerTol;
  double gap_upper_tol = kGapUpperTol;

  bool passes() const { return gap >= -gap_lower_tol && gap <= gap_upper_tol; }
};

inline AdditivityCertificate certify_additivity(const SiteDims& dims, double p, const OptimizerConfig& cfg,
                                                double gap_lower_tol = kGapLowerTol, double gap_upper_tol = kGapUpperTol) {
  check_order(p, OrderRange::standard, true);
  if (dims.size() < 2) throw Error(ErrorKind::invalid_argument, "additivity needs at least two channels");
  const OptResult r = minimize_entropy_output(ProductChannel(dims), p, cfg);
  AdditivityCertificate c;
  c.dims = dims;
  c.p = p;
  c.meo_product_estimate = r.best_value;
  c.meo_sum_of_singles = additivity_rhs(dims);
  c.gap = c.meo_product_estimate - c.meo_sum_of_singles;
  for (double purity : subset_purities(dims, r.best_state)) {
    c.argmin_product_distance = std::max(c.argmin_product_distance, 1.0 - purity);
  }
  c.gap_lower_tol = gap_lower_tol;
  c.gap_upper_tol = gap_upper_tol;
  return c;
}

}  // namespace whmeo
