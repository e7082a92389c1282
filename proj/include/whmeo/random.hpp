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

#include <cstdint>
#include <random>

#include "whmeo/channels.hpp"

namespace whmeo {

using Rng = std::mt19937_64;

/// splitmix64 finalizer of seed ^ stream; used to derive independent,
/// reproducible sub-seeds (one per optimizer restart, one per sample...).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = (seed ^ stream) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Vector gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (auto& z : v) {
    const double re = normal(rng);
    z = Complex(re, normal(rng));
  }
  return v;
}

inline Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  return Matrix(rows, cols, gaussian_vector(rows * cols, rng));
}

inline PureState random_pure_state(const SiteDims& dims, Rng& rng) {
  return PureState::normalized(gaussian_vector(dims.total(), rng), dims);
}

/// Tensor product of independent random single-site vectors.
inline PureState random_product_state(const SiteDims& dims, Rng& rng) {
  Vector v{1.0};
  for (std::size_t d : dims) {
    Vector site = gaussian_vector(d, rng);
    const double n = vector_norm(site);
    for (auto& z : site) z /= n;
    v = tensor_product(v, site);
  }
  return PureState::normalized(std::move(v), dims);
}

inline Matrix random_hermitian(std::size_t n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) * Complex(0.5);
}

/// G G* / tr(G G*) with G of shape n x rank (rank = n when 0).
inline DensityMatrix random_density_matrix(const SiteDims& dims, Rng& rng, std::size_t rank = 0) {
  const std::size_t n = dims.total();
  if (rank == 0 || rank > n) rank = n;
  const Matrix g = gaussian_matrix(n, rank, rng);
  Matrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(std::move(rho), dims);
}

/// Gram-Schmidt (twice) on the columns of a complex Gaussian matrix. The
/// implied R factor has a positive real diagonal, which fixes the phases.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix q = gaussian_matrix(n, n, rng);
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, j)) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= dot * q(i, j);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  return q;
}

}  // namespace whmeo
