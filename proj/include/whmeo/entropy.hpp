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

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "whmeo/channels.hpp"

namespace whmeo {

/// Eigenvalues in [-kEigenClipTol, 0) are rounding and are clipped to zero;
/// anything more negative means the input is not a state.
inline constexpr double kEigenClipTol = 1e-10;
/// Eigenvalues at or below this contribute nothing to -sum l log l.
inline constexpr double kLogFloor = 1e-15;
/// Upper end of the Renyi orders covered by the additivity result.
inline constexpr double kMaxRenyiOrder = 2.0;

/// Whether orders above kMaxRenyiOrder are accepted.
enum class OrderRange { standard, unrestricted };

inline void check_order(double p, OrderRange range, bool allow_one) {
  const bool low_ok = allow_one ? p >= 1.0 : p > 1.0;
  const bool high_ok = range == OrderRange::unrestricted ? std::isfinite(p) : p <= kMaxRenyiOrder;
  if (!(low_ok && high_ok)) {
    throw Error(ErrorKind::invalid_exponent,
                "Renyi order " + std::to_string(p) + " outside " + (allow_one ? "[1, " : "(1, ") +
                    (range == OrderRange::unrestricted ? std::string("inf)") : std::string("2]")));
  }
}

/// Eigenvalues with rounding-level negatives set to zero.
inline std::vector<double> clipped_spectrum(std::vector<double> ev) {
  for (auto& l : ev) {
    if (l < -kEigenClipTol) throw Error(ErrorKind::invalid_state, "eigenvalue " + std::to_string(l) + " is negative");
    if (l < 0.0) l = 0.0;
  }
  return ev;
}

inline std::vector<double> state_spectrum(const DensityMatrix& rho) {
  return clipped_spectrum(hermitian_eigenvalues(rho.matrix()).eigenvalues);
}

/// -sum l log l, nats.
inline double von_neumann_from_spectrum(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l > kLogFloor) s -= l * std::log(l);
  }
  return s;
}

/// -log(sum l^p) / (p - 1) on the trace-normalized spectrum. The sum is
/// formed as 1 + sum m expm1((p-1) log m), m = l / sum l, so orders close to 1
/// do not lose everything to cancellation or to trace rounding.
inline double renyi_from_spectrum(std::span<const double> spectrum, double p) {
  const double q = p - 1.0;
  double total = 0.0;
  for (double l : spectrum) {
    if (l > 0.0) total += l;
  }
  double excess = 0.0;
  for (double l : spectrum) {
    if (l <= 0.0) continue;
    const double m = l / total;
    excess += m * std::expm1(q * std::log(m));
  }
  return -std::log1p(excess) / q;
}

/// S_p with p = 1 meaning von Neumann.
inline double entropy_from_spectrum(std::span<const double> spectrum, double p) {
  return p == 1.0 ? von_neumann_from_spectrum(spectrum) : renyi_from_spectrum(spectrum, p);
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_from_spectrum(state_spectrum(rho)); }

/// S_p(rho) = -log(tr rho^p) / (p - 1), p in (1, 2].
inline double renyi_entropy(const DensityMatrix& rho, double p, OrderRange range = OrderRange::standard) {
  check_order(p, range, false);
  return renyi_from_spectrum(state_spectrum(rho), p);
}

/// S_p for p in [1, 2], dispatching p = 1 to von Neumann.
inline double entropy(const DensityMatrix& rho, double p, OrderRange range = OrderRange::standard) {
  check_order(p, range, true);
  return entropy_from_spectrum(state_spectrum(rho), p);
}

/// S_p(rho) = -(p / (p - 1)) log ||rho||_p, through the Schatten norm.
inline double renyi_from_pnorm(const DensityMatrix& rho, double p, OrderRange range = OrderRange::standard) {
  check_order(p, range, false);
  return -(p / (p - 1.0)) * std::log(schatten_p_norm(rho.matrix(), p));
}

/// S_p of the channel output on |phi><phi|.
inline double entropy_output(const ProductChannel& pc, const PureState& phi, double p,
                             OrderRange range = OrderRange::standard) {
  check_order(p, range, true);
  if (!(phi.dims() == pc.dims())) {
    throw Error(ErrorKind::dim_mismatch, "state dims (" + to_string(phi.dims()) + ") vs channel dims (" + to_string(pc.dims()) + ")");
  }
  return entropy(product_apply(pc, DensityMatrix::from_pure(phi)), p, range);
}

}  // namespace whmeo
