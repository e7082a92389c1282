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
#include <string>
#include <utility>
#include <vector>

#include "whmeo/states.hpp"

namespace whmeo {

inline constexpr double kUnitaryTol = 1e-10;

/// rho -> (1 - rho^T) / (d - 1) on d-dimensional states.
class WHChannel {
 public:
  explicit WHChannel(std::size_t d) : d_(d) {
    if (d < 2) throw Error(ErrorKind::invalid_argument, "Werner-Holevo channel needs d >= 2, got " + std::to_string(d));
  }

  std::size_t dim() const { return d_; }

 private:
  std::size_t d_;
};

/// Tensor product of Werner-Holevo channels, factor j acting on site j.
class ProductChannel {
 public:
  explicit ProductChannel(std::vector<WHChannel> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorKind::invalid_argument, "product channel needs at least one factor");
    std::vector<std::size_t> d;
    for (const auto& f : factors_) d.push_back(f.dim());
    dims_ = SiteDims(std::move(d));
  }

  explicit ProductChannel(const SiteDims& dims) : ProductChannel(factors_for(dims)) {}

  const std::vector<WHChannel>& factors() const { return factors_; }
  const SiteDims& dims() const { return dims_; }
  std::size_t size() const { return factors_.size(); }

 private:
  static std::vector<WHChannel> factors_for(const SiteDims& dims) {
    std::vector<WHChannel> out;
    for (std::size_t d : dims) out.emplace_back(d);
    return out;
  }

  std::vector<WHChannel> factors_;
  SiteDims dims_;
};

inline DensityMatrix wh_apply(const WHChannel& ch, const DensityMatrix& rho) {
  const std::size_t d = ch.dim();
  if (rho.side() != d) {
    throw Error(ErrorKind::dim_mismatch, "channel dimension " + std::to_string(d) + " vs state side " + std::to_string(rho.side()));
  }
  const double scale = 1.0 / static_cast<double>(d - 1);
  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = ((i == j ? 1.0 : 0.0) - rho.matrix()(j, i)) * scale;
  }
  return DensityMatrix::unchecked(std::move(out), rho.dims());
}

/// Action of the channel on site `site` alone (identity elsewhere):
/// (tr_site(M) (x) 1_site - M^{T_site}) / (d - 1). Linear, so `m` need not be
/// a state.
inline Matrix apply_on_site(const WHChannel& ch, const Matrix& m, const SiteDims& dims, std::size_t site) {
  detail::require_structured(m, dims, "apply_on_site");
  if (site >= dims.size()) throw Error(ErrorKind::invalid_argument, "site " + std::to_string(site) + " out of range");
  if (dims[site] != ch.dim()) {
    throw Error(ErrorKind::dim_mismatch, "site " + std::to_string(site) + " has dimension " + std::to_string(dims[site]) +
                                             ", channel expects " + std::to_string(ch.dim()));
  }
  const std::size_t d = ch.dim();
  const std::size_t stride = dims.strides()[site];
  const std::size_t n = m.rows();
  const double scale = 1.0 / static_cast<double>(d - 1);
  auto digit = [&](std::size_t g) { return (g / stride) % d; };

  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rd = digit(r);
    const std::size_t r0 = r - rd * stride;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cd = digit(c);
      const std::size_t c0 = c - cd * stride;
      Complex v = -m(r0 + cd * stride, c0 + rd * stride);
      if (rd == cd) {
        for (std::size_t a = 0; a < d; ++a) v += m(r0 + a * stride, c0 + a * stride);
      }
      out(r, c) = v * scale;
    }
  }
  return out;
}

/// Applies every factor in turn on its own site; the result does not depend on
/// the order.
inline DensityMatrix product_apply(const ProductChannel& pc, const DensityMatrix& rho) {
  if (!(rho.dims() == pc.dims())) {
    throw Error(ErrorKind::dim_mismatch, "state dims (" + to_string(rho.dims()) + ") vs channel dims (" + to_string(pc.dims()) + ")");
  }
  Matrix m = rho.matrix();
  for (std::size_t j = 0; j < pc.size(); ++j) m = apply_on_site(pc.factors()[j], m, pc.dims(), j);
  return DensityMatrix::unchecked(std::move(m), pc.dims());
}

/// (id (x) Gamma_d)(|Phi+><Phi+|), Phi+ = d^{-1/2} sum_i |ii>. The first
/// factor is the reference system, the second the channel output.
inline Matrix choi_matrix(const WHChannel& ch) {
  const std::size_t d = ch.dim();
  Vector phi(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) phi[i * d + i] = amp;
  return apply_on_site(ch, Matrix::outer(phi), SiteDims{d, d}, 1);
}

struct CptpReport {
  double min_eigenvalue = 0.0;
  /// ||tr_out(choi) - 1/d||_F
  double trace_preservation_error = 0.0;
};

inline CptpReport verify_cptp(const Matrix& choi, std::size_t d) {
  if (d == 0 || choi.rows() != d * d || choi.cols() != d * d) {
    throw Error(ErrorKind::dim_mismatch, "Choi matrix " + choi.shape() + " does not match d = " + std::to_string(d));
  }
  CptpReport report;
  const auto ev = hermitian_eigenvalues(choi).eigenvalues;
  report.min_eigenvalue = ev.front();
  const SiteDims io(std::vector<std::size_t>{d, d});
  const Matrix reference = partial_trace(choi, io, SubsetMask::single(0));
  report.trace_preservation_error =
      frobenius_distance(reference, Matrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
  return report;
}

/// ||U Gamma(rho) U* - Gamma(conj(U) rho conj(U)*)||_F
inline double covariance_residual(const WHChannel& ch, const Matrix& u, const DensityMatrix& rho) {
  require_square(u, "covariance_residual");
  if (u.rows() != ch.dim()) throw Error(ErrorKind::dim_mismatch, "unitary side does not match channel dimension");
  const double dev = unitarity_deviation(u);
  if (!(dev <= kUnitaryTol)) throw Error(ErrorKind::not_unitary, "max |U*U - 1| = " + std::to_string(dev));
  const Matrix ubar = u.conjugate();
  const Matrix lhs = u * wh_apply(ch, rho).matrix() * u.adjoint();
  const auto rotated = DensityMatrix::unchecked(ubar * rho.matrix() * ubar.adjoint(), rho.dims());
  return frobenius_distance(lhs, wh_apply(ch, rotated).matrix());
}

}  // namespace whmeo
