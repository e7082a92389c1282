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
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "whmeo/linalg/matrix.hpp"

namespace whmeo {

/// Absolute tolerance on max|M_ij - conj(M_ji)| for a matrix to count as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius mass drops below this times ||M||_F.
inline constexpr double kJacobiOffDiagonalTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr int kQlMaxIterationsPerEigenvalue = 100;

struct HermitianSpectrum {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Column k is the eigenvector of eigenvalues[k].
  std::optional<Matrix> eigenvectors;
};

enum class EigenMethod {
  /// Jacobi when eigenvectors are requested, tridiagonal QL otherwise.
  automatic,
  jacobi,
  tridiagonal_ql,
};

namespace detail {

/// Checks hermiticity and returns (M + M*)/2.
inline Matrix symmetrized(const Matrix& m) {
  require_square(m, "Hermitian eigensolver");
  const double dev = m.max_hermitian_deviation();
  if (!(dev <= kHermitianTol)) {
    throw Error(ErrorKind::not_hermitian, "max |M_ij - conj(M_ji)| = " + std::to_string(dev));
  }
  Matrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

inline double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

/// Cyclic complex Jacobi. Each rotation is V = D R with D a phase on column q
/// that makes a_pq real and R the classical real Jacobi rotation.
inline HermitianSpectrum jacobi(Matrix a, bool want_vectors) {
  const std::size_t n = a.rows();
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
  const double threshold = kJacobiOffDiagonalTol * a.frobenius_norm();

  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_diagonal_mass(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        const Complex conj_phase = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- A V
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = conj_phase * a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        // A <- V* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = phase * a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = conj_phase * v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a(order[k], order[k]).real();
  if (want_vectors) {
    Matrix sorted(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) sorted(i, k) = v(i, order[k]);
    }
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form. Returns the diagonal and the moduli of the subdiagonal (the phases
/// are removed by a diagonal unitary similarity, which leaves the spectrum
/// unchanged).
inline void householder_tridiagonalize(Matrix& a, std::vector<double>& diag, std::vector<double>& sub) {
  const std::size_t n = a.rows();
  Vector v, p;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    if (xnorm2 == 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 == 0.0 ? Complex{1.0} : x0 / ax0;
    const Complex alpha = -phase * xnorm;

    v.assign(m, Complex{});
    v[0] = x0 - alpha;
    for (std::size_t i = 1; i < m; ++i) v[i] = a(k + 1 + i, k);
    const double vnorm = vector_norm(v);
    for (auto& z : v) z /= vnorm;

    // p = A_sub v, w = p - (v* p) v, A_sub <- A_sub - 2 (v w* + w v*)
    p.assign(m, Complex{});
    for (std::size_t i = 0; i < m; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = s;
    }
    Complex vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) vp += std::conj(v[i]) * p[i];
    for (std::size_t i = 0; i < m; ++i) p[i] -= vp * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        a(k + 1 + i, k + 1 + j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
      }
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
  }
  diag.resize(n);
  sub.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = std::abs(a(i + 1, i));
}

/// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal matrix.
/// `sub[i]` couples i and i+1; sub[n-1] must be 0.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kQlMaxIterationsPerEigenvalue) break;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Eigenvalues (ascending) and optionally eigenvectors of a Hermitian matrix.
/// Inputs within kHermitianTol of Hermitian are symmetrized first.
inline HermitianSpectrum hermitian_eigenvalues(const Matrix& m, bool want_vectors = false,
                                               EigenMethod method = EigenMethod::automatic) {
  Matrix a = detail::symmetrized(m);
  if (method == EigenMethod::automatic) method = want_vectors ? EigenMethod::jacobi : EigenMethod::tridiagonal_ql;
  if (method == EigenMethod::jacobi || a.rows() == 0) return detail::jacobi(std::move(a), want_vectors);
  if (want_vectors) throw Error(ErrorKind::invalid_argument, "tridiagonal QL path computes eigenvalues only");

  HermitianSpectrum out;
  std::vector<double> sub;
  detail::householder_tridiagonalize(a, out.eigenvalues, sub);
  detail::tridiagonal_ql(out.eigenvalues, sub);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

/// Singular values in descending order. Hermitian input uses |eigenvalues|;
/// anything else goes through the Hermitian dilation [[0, X], [X*, 0]], whose
/// spectrum is {+-s_j} padded with zeros.
inline std::vector<double> singular_values(const Matrix& x) {
  std::vector<double> s;
  if (x.is_square() && x.max_hermitian_deviation() <= kHermitianTol) {
    for (double lambda : hermitian_eigenvalues(x).eigenvalues) s.push_back(std::abs(lambda));
  } else {
    const std::size_t r = x.rows(), c = x.cols();
    Matrix dilation(r + c, r + c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        dilation(i, r + j) = x(i, j);
        dilation(r + j, i) = std::conj(x(i, j));
      }
    }
    const auto ev = hermitian_eigenvalues(dilation).eigenvalues;
    const std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < k; ++i) s.push_back(std::max(0.0, ev[ev.size() - 1 - i]));
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// ||X||_p = (sum_j s_j^p)^(1/p) over singular values, p >= 1.
inline double schatten_p_norm(const Matrix& x, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::invalid_exponent, "Schatten exponent must be >= 1, got " + std::to_string(p));
  }
  const auto s = singular_values(x);
  if (s.empty() || s.front() == 0.0) return 0.0;
  const double top = s.front();
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

}  // namespace whmeo
