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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "whmeo/linalg/matrix.hpp"
#include "whmeo/sites.hpp"

namespace whmeo {

/// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] B[k,l]
inline Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

inline Vector tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

namespace detail {

inline void require_structured(const Matrix& m, const SiteDims& dims, const char* what) {
  require_square(m, what);
  if (m.rows() != dims.total()) {
    throw Error(ErrorKind::dim_mismatch, std::string(what) + ": matrix side " + std::to_string(m.rows()) +
                                             " != product of dims " + std::to_string(dims.total()));
  }
}

/// For every global index g, the part of g carried by the sites in `mask`,
/// expressed in global units: sum_{j in mask} digit_j(g) * stride_j.
inline std::vector<std::size_t> masked_offsets(const SiteDims& dims, SubsetMask mask) {
  const auto strides = dims.strides();
  std::vector<std::size_t> out(dims.total(), 0);
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (mask.contains(j)) off += ((g / strides[j]) % dims[j]) * strides[j];
    }
    out[g] = off;
  }
  return out;
}

/// Row-major index of g restricted to the sites in `mask` (ascending order).
inline std::vector<std::size_t> compressed_indices(const SiteDims& dims, SubsetMask mask) {
  const auto strides = dims.strides();
  std::vector<std::size_t> out(dims.total(), 0);
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (mask.contains(j)) idx = idx * dims[j] + (g / strides[j]) % dims[j];
    }
    out[g] = idx;
  }
  return out;
}

}  // namespace detail

/// Reduced matrix on the sites in `keep`, tracing out the rest. keep = none
/// gives the 1x1 matrix [tr M].
inline Matrix partial_trace(const Matrix& m, const SiteDims& dims, SubsetMask keep) {
  detail::require_structured(m, dims, "partial_trace");
  dims.require_mask(keep);
  const SubsetMask traced = keep.complement(dims.size());
  const std::size_t kept_total = dims.total_of(keep);
  const std::size_t traced_total = dims.total_of(traced);

  // global index of (kept index, traced index)
  const auto kept_idx = detail::compressed_indices(dims, keep);
  const auto traced_idx = detail::compressed_indices(dims, traced);
  std::vector<std::size_t> global(dims.total());
  for (std::size_t g = 0; g < global.size(); ++g) global[kept_idx[g] * traced_total + traced_idx[g]] = g;

  Matrix out(kept_total, kept_total);
  for (std::size_t r = 0; r < kept_total; ++r) {
    for (std::size_t c = 0; c < kept_total; ++c) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < traced_total; ++t) s += m(global[r * traced_total + t], global[c * traced_total + t]);
      out(r, c) = s;
    }
  }
  return out;
}

/// Transpose with respect to the standard basis on the sites in `sites` only.
inline Matrix transpose_sites(const Matrix& m, const SiteDims& dims, SubsetMask sites) {
  detail::require_structured(m, dims, "transpose_sites");
  dims.require_mask(sites);
  const auto off = detail::masked_offsets(dims, sites);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(r - off[r] + off[c], c - off[c] + off[r]);
  }
  return out;
}

namespace detail {

/// new_index[g] for reordering tensor factors so that output site k is input
/// site order[k].
inline std::vector<std::size_t> permutation_map(const SiteDims& dims, std::span<const std::size_t> order) {
  if (order.size() != dims.size()) throw Error(ErrorKind::dim_mismatch, "site permutation has wrong length");
  std::vector<bool> seen(order.size(), false);
  for (std::size_t s : order) {
    if (s >= order.size() || seen[s]) throw Error(ErrorKind::invalid_argument, "site order is not a permutation");
    seen[s] = true;
  }
  const auto strides = dims.strides();
  std::vector<std::size_t> out(dims.total());
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < order.size(); ++k) idx = idx * dims[order[k]] + (g / strides[order[k]]) % dims[order[k]];
    out[g] = idx;
  }
  return out;
}

inline SiteDims permuted_dims(const SiteDims& dims, std::span<const std::size_t> order) {
  std::vector<std::size_t> out;
  for (std::size_t s : order) out.push_back(dims[s]);
  return SiteDims(std::move(out));
}

}  // namespace detail

/// Reorders tensor factors: site k of the result is site order[k] of `m`.
/// The result is structured by permuted_dims(dims, order).
inline Matrix permute_sites(const Matrix& m, const SiteDims& dims, std::span<const std::size_t> order) {
  detail::require_structured(m, dims, "permute_sites");
  const auto map = detail::permutation_map(dims, order);
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

inline Vector permute_sites(std::span<const Complex> v, const SiteDims& dims, std::span<const std::size_t> order) {
  if (v.size() != dims.total()) throw Error(ErrorKind::dim_mismatch, "vector length != product of dims");
  const auto map = detail::permutation_map(dims, order);
  Vector out(v.size());
  for (std::size_t g = 0; g < v.size(); ++g) out[map[g]] = v[g];
  return out;
}

/// Sites of `mask` followed by the sites of its complement, each ascending.
inline std::vector<std::size_t> block_order(const SiteDims& dims, SubsetMask mask) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (mask.contains(j)) order.push_back(j);
  }
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (!mask.contains(j)) order.push_back(j);
  }
  return order;
}

inline std::vector<std::size_t> inverse_order(std::span<const std::size_t> order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[order[k]] = k;
  return inv;
}

}  // namespace whmeo
