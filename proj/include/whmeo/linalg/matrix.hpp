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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "whmeo/error.hpp"

namespace whmeo {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorKind::dim_mismatch, "entry count " + std::to_string(data_.size()) + " != " +
                                               std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::dim_mismatch, "ragged initializer list");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static Matrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |a><a|
  static Matrix outer(std::span<const Complex> a) {
    Matrix m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i] * std::conj(a[j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  Matrix conjugate() const {
    Matrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// max_{ij} |M_ij - conj(M_ji)|
  double max_hermitian_deviation() const {
    if (!is_square()) throw Error(ErrorKind::not_square, "hermiticity requires a square matrix");
    double dev = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = i; j < cols_; ++j) dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
    return dev;
  }

  double max_abs_entry() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  Matrix& operator+=(const Matrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::dim_mismatch, "product of " + a.shape() + " and " + b.shape());
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend Vector operator*(const Matrix& a, std::span<const Complex> x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::dim_mismatch, "matrix-vector size mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw Error(ErrorKind::dim_mismatch, "shape " + shape() + " vs " + other.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorKind::not_square, std::string(what) + " needs a square matrix, got " + m.shape());
}

/// Frobenius distance ||a - b||_F.
inline double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

inline double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// max entry of |U* U - 1|
inline double unitarity_deviation(const Matrix& u) {
  require_square(u, "unitarity check");
  return (u.adjoint() * u - Matrix::identity(u.rows())).max_abs_entry();
}

}  // namespace whmeo
