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
#include <cstdint>
#include <string>
#include <vector>

#include "whmeo/channels.hpp"

namespace whmeo {

/// Subset enumerations walk all 2^N masks.
inline constexpr std::size_t kMaxEnumeratedSites = 20;

namespace detail {

inline void require_matching(const SiteDims& dims, const PureState& omega) {
  if (!(omega.dims() == dims)) {
    throw Error(ErrorKind::dim_mismatch, "state dims (" + to_string(omega.dims()) + ") vs dims (" + to_string(dims) + ")");
  }
  if (dims.size() > kMaxEnumeratedSites) throw Error(ErrorKind::dimension_too_large, "too many sites to enumerate subsets");
}

/// rho_mask (x) 1_complement, assembled in (mask sites, complement sites)
/// block order and then moved back to the global site order.
inline Matrix embed_reduced(const Matrix& reduced, const SiteDims& dims, SubsetMask mask) {
  const SubsetMask rest = mask.complement(dims.size());
  const Matrix block = tensor_product(reduced, Matrix::identity(dims.total_of(rest)));
  const auto order = block_order(dims, mask);
  const SiteDims block_dims = detail::permuted_dims(dims, order);
  const auto back = inverse_order(order);
  return permute_sites(block, block_dims, back);
}

}  // namespace detail

/// prod_{j in complement of mask} (d_j - 2), exact.
inline std::int64_t collapse_weight(const SiteDims& dims, SubsetMask mask) {
  dims.require_mask(mask);
  std::int64_t w = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (!mask.contains(j)) w *= static_cast<std::int64_t>(dims[j]) - 2;
  }
  return w;
}

/// prod_j 1/(d_j - 1), the largest output purity of the product channel.
inline double purity_bound(const SiteDims& dims) {
  double b = 1.0;
  for (std::size_t d : dims) b /= static_cast<double>(d - 1);
  return b;
}

/// Output of the product channel on |Omega><Omega| by inclusion-exclusion:
///   prod_j 1/(d_j - 1) sum_L (-1)^|L| rho_L (x) 1_{L^c},
/// rho_L being the reduction of |conj Omega><conj Omega| to the sites in L.
inline DensityMatrix xn_output(const SiteDims& dims, const PureState& omega) {
  detail::require_matching(dims, omega);
  require_total_at_most(dims);
  const Matrix conj_projector = omega.conjugate().projector();
  const std::size_t n = dims.total();
  Matrix out(n, n);
  const std::uint64_t subsets = std::uint64_t{1} << dims.size();
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    const SubsetMask mask(bits);
    const Matrix term = detail::embed_reduced(partial_trace(conj_projector, dims, mask), dims, mask);
    if (mask.count() % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  out *= Complex(purity_bound(dims));
  return DensityMatrix::unchecked(std::move(out), dims);
}

/// tr rho_L^2 for every subset L, indexed by mask bits. The empty subset is
/// the scalar 1 by convention.
///
/// Computed from the Schmidt-type reshape: with Psi the amplitudes of
/// conj(Omega) arranged as (L indices) x (L^c indices), rho_L = Psi Psi* and
/// tr rho_L^2 = ||Psi* Psi||_F^2 = ||Psi Psi*||_F^2, whichever Gram matrix is
/// smaller.
inline std::vector<double> subset_purities(const SiteDims& dims, const PureState& omega) {
  detail::require_matching(dims, omega);
  const Vector amps = omega.conjugate().amplitudes();
  const std::uint64_t subsets = std::uint64_t{1} << dims.size();
  std::vector<double> out(subsets, 0.0);
  out[0] = 1.0;
  for (std::uint64_t bits = 1; bits < subsets; ++bits) {
    const SubsetMask mask(bits);
    const std::size_t rows = dims.total_of(mask);
    const std::size_t cols = dims.total() / rows;
    const auto order = block_order(dims, mask);
    const Vector psi = permute_sites(amps, dims, order);
    double purity = 0.0;
    if (rows <= cols) {
      for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < rows; ++b) {
          Complex g = 0.0;
          for (std::size_t t = 0; t < cols; ++t) g += psi[a * cols + t] * std::conj(psi[b * cols + t]);
          purity += std::norm(g);
        }
      }
    } else {
      for (std::size_t a = 0; a < cols; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
          Complex g = 0.0;
          for (std::size_t r = 0; r < rows; ++r) g += std::conj(psi[r * cols + a]) * psi[r * cols + b];
          purity += std::norm(g);
        }
      }
    }
    out[bits] = purity;
  }
  return out;
}

/// tr X_N^2 = prod_j (d_j - 1)^-2 sum_L tr rho_L^2 prod_{j in L^c} (d_j - 2),
/// summed in ascending mask order.
inline double purity_closed_form(const SiteDims& dims, const PureState& omega) {
  const auto purities = subset_purities(dims, omega);
  double sum = 0.0;
  for (std::uint64_t bits = 0; bits < purities.size(); ++bits) {
    const std::int64_t w = collapse_weight(dims, SubsetMask(bits));
    if (w != 0) sum += purities[bits] * static_cast<double>(w);
  }
  const double b = purity_bound(dims);
  return b * b * sum;
}

/// tr X_N^2 as the squared Frobenius norm of the explicit output.
inline double purity_brute_force(const SiteDims& dims, const PureState& omega) {
  const double f = xn_output(dims, omega).matrix().frobenius_norm();
  return f * f;
}

struct SubsetTerm {
  SubsetMask mask;
  double purity = 0.0;
  std::int64_t weight = 0;
};

struct PurityReport {
  double closed_form = 0.0;
  double brute_force = 0.0;
  double bound = 0.0;
  /// One entry per subset, ascending mask order.
  std::vector<SubsetTerm> per_subset;
};

inline PurityReport purity_report(const SiteDims& dims, const PureState& omega) {
  PurityReport r;
  const auto purities = subset_purities(dims, omega);
  for (std::uint64_t bits = 0; bits < purities.size(); ++bits) {
    r.per_subset.push_back({SubsetMask(bits), purities[bits], collapse_weight(dims, SubsetMask(bits))});
  }
  r.closed_form = purity_closed_form(dims, omega);
  r.brute_force = purity_brute_force(dims, omega);
  r.bound = purity_bound(dims);
  return r;
}

/// Evaluates, by enumerating every pair (D, D') with D subset of L^c and D'
/// subset of L^c \ D,
///   sum (-1)^{|D| + |D'|} prod_{j in (L^c \ D) \ D'} d_j,
/// which collapses to prod_{j in L^c} (d_j - 2).
inline std::int64_t inclusion_exclusion_collapse(const SiteDims& dims, SubsetMask mask) {
  dims.require_mask(mask);
  const SubsetMask rest = mask.complement(dims.size());
  auto product_over = [&](SubsetMask s) {
    std::int64_t p = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (s.contains(j)) p *= static_cast<std::int64_t>(dims[j]);
    }
    return p;
  };
  std::int64_t total = 0;
  // submask walk: delta runs over all subsets of rest, including the empty one
  std::uint64_t delta = rest.bits();
  while (true) {
    const SubsetMask remaining = rest - SubsetMask(delta);
    std::uint64_t delta2 = remaining.bits();
    while (true) {
      const SubsetMask survivors = remaining - SubsetMask(delta2);
      const int sign = ((SubsetMask(delta).count() + SubsetMask(delta2).count()) % 2 == 0) ? 1 : -1;
      total += sign * product_over(survivors);
      if (delta2 == 0) break;
      delta2 = (delta2 - 1) & remaining.bits();
    }
    if (delta == 0) break;
    delta = (delta - 1) & rest.bits();
  }
  return total;
}

/// sum_j log(d_j - 1): the single-channel minimal outputs added up.
inline double additivity_rhs(const SiteDims& dims) {
  double s = 0.0;
  for (std::size_t d : dims) s += std::log(static_cast<double>(d - 1));
  return s;
}

}  // namespace whmeo
