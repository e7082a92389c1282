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

#include "whmeo/linalg.hpp"

namespace whmeo {

inline constexpr double kPureNormTol = 1e-12;
inline constexpr double kStateHermitianTol = 1e-12;
inline constexpr double kStateTraceTol = 1e-10;
inline constexpr double kStateNegativityTol = 1e-10;

/// Unit vector in the tensor product of the sites described by `dims`.
class PureState {
 public:
  PureState(Vector amplitudes, SiteDims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (amplitudes_.size() != dims_.total()) {
      throw Error(ErrorKind::dim_mismatch, "state length " + std::to_string(amplitudes_.size()) +
                                               " != product of dims " + std::to_string(dims_.total()));
    }
    const double norm = vector_norm(amplitudes_);
    if (!(std::abs(norm - 1.0) <= kPureNormTol)) {
      throw Error(ErrorKind::invalid_state, "state norm is " + std::to_string(norm));
    }
  }

  /// Rescales to unit norm.
  static PureState normalized(Vector amplitudes, SiteDims dims) {
    const double norm = vector_norm(amplitudes);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorKind::invalid_state, "cannot normalize a zero vector");
    for (auto& z : amplitudes) z /= norm;
    return PureState(std::move(amplitudes), std::move(dims));
  }

  /// Computational basis state |index>.
  static PureState basis(std::size_t index, SiteDims dims) {
    Vector v(dims.total());
    if (index >= v.size()) throw Error(ErrorKind::dim_mismatch, "basis index out of range");
    v[index] = 1.0;
    return PureState(std::move(v), std::move(dims));
  }

  const Vector& amplitudes() const { return amplitudes_; }
  const SiteDims& dims() const { return dims_; }
  std::size_t size() const { return amplitudes_.size(); }

  /// Entrywise complex conjugate in the standard basis.
  PureState conjugate() const {
    PureState out = *this;
    for (auto& z : out.amplitudes_) z = std::conj(z);
    return out;
  }

  /// |phi><phi|
  Matrix projector() const { return Matrix::outer(amplitudes_); }

 private:
  Vector amplitudes_;
  SiteDims dims_;
};

/// Positive semidefinite, unit-trace operator on the sites described by `dims`.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and positivity.
  DensityMatrix(Matrix mat, SiteDims dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
    check_shape();
    const double dev = mat_.max_hermitian_deviation();
    if (!(dev <= kStateHermitianTol)) throw Error(ErrorKind::not_hermitian, "density matrix deviates by " + std::to_string(dev));
    const Complex tr = mat_.trace();
    if (!(std::abs(tr - 1.0) <= kStateTraceTol)) {
      throw Error(ErrorKind::invalid_state, "trace is " + std::to_string(tr.real()) + "+" + std::to_string(tr.imag()) + "i");
    }
    const auto ev = hermitian_eigenvalues(mat_).eigenvalues;
    if (!ev.empty() && ev.front() < -kStateNegativityTol) {
      throw Error(ErrorKind::invalid_state, "negative eigenvalue " + std::to_string(ev.front()));
    }
  }

  /// For outputs that are valid by construction (channel images); only the
  /// shape is checked.
  static DensityMatrix unchecked(Matrix mat, SiteDims dims) {
    DensityMatrix out;
    out.mat_ = std::move(mat);
    out.dims_ = std::move(dims);
    out.check_shape();
    return out;
  }

  static DensityMatrix from_pure(const PureState& phi) { return unchecked(phi.projector(), phi.dims()); }

  static DensityMatrix maximally_mixed(const SiteDims& dims) {
    return unchecked(Matrix::identity(dims.total()) * Complex(1.0 / static_cast<double>(dims.total())), dims);
  }

  const Matrix& matrix() const { return mat_; }
  const SiteDims& dims() const { return dims_; }
  std::size_t side() const { return mat_.rows(); }

 private:
  DensityMatrix() = default;

  void check_shape() const {
    require_square(mat_, "density matrix");
    if (mat_.rows() != dims_.total()) {
      throw Error(ErrorKind::dim_mismatch, "density matrix side " + std::to_string(mat_.rows()) +
                                               " != product of dims " + std::to_string(dims_.total()));
    }
  }

  Matrix mat_;
  SiteDims dims_;
};

}  // namespace whmeo
