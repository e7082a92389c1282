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

#include <cmath>

#include "catch2/catch_amalgamated.hpp"
#include "oracles.hpp"
#include "whmeo/random.hpp"
#include "whmeo/wh_core.hpp"

using namespace whmeo;
using Catch::Matchers::WithinAbs;

namespace {

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected whmeo::Error");
  return ErrorKind::invalid_argument;
}

DensityMatrix basis_projector(std::size_t i, std::size_t d) {
  return DensityMatrix::from_pure(PureState::basis(i, SiteDims{d}));
}

Vector max_entangled(std::size_t d) {
  Vector v(d * d);
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(double(d));
  return v;
}

}  // namespace

TEST_CASE("state types validate their invariants", "[channels][states]") {
  CHECK(error_kind_of([] { PureState(Vector{1.0, 1.0}, SiteDims{2}); }) == ErrorKind::invalid_state);
  CHECK(error_kind_of([] { PureState(Vector{1.0}, SiteDims{2}); }) == ErrorKind::dim_mismatch);
  CHECK(error_kind_of([] { PureState::normalized(Vector(4), SiteDims{2, 2}); }) == ErrorKind::invalid_state);
  CHECK(error_kind_of([] { DensityMatrix(Matrix::diagonal({0.5, 0.6}), SiteDims{2}); }) == ErrorKind::invalid_state);
  CHECK(error_kind_of([] { DensityMatrix(Matrix::diagonal({1.5, -0.5}), SiteDims{2}); }) == ErrorKind::invalid_state);
  CHECK(error_kind_of([] { DensityMatrix(Matrix{{0.5, 0.1}, {0.0, 0.5}}, SiteDims{2}); }) == ErrorKind::not_hermitian);
  CHECK(error_kind_of([] { DensityMatrix(Matrix::identity(3), SiteDims{2}); }) == ErrorKind::dim_mismatch);
  CHECK(error_kind_of([] { WHChannel(1); }) == ErrorKind::invalid_argument);
  CHECK(error_kind_of([] { ProductChannel(std::vector<WHChannel>{}); }) == ErrorKind::invalid_argument);
  CHECK(error_kind_of([] { SiteDims{3, 1}; }) == ErrorKind::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(Matrix::diagonal({0.5, 0.5}), SiteDims{2}));
}

TEST_CASE("wh_apply on basis and mixed states", "[channels]") {
  SECTION("d = 2 flips |0><0| to |1><1|") {
    CHECK(wh_apply(WHChannel(2), basis_projector(0, 2)).matrix() == Matrix::diagonal({0, 1}));
  }
  SECTION("maximally mixed is a fixed point") {
    const auto out = wh_apply(WHChannel(3), DensityMatrix::maximally_mixed(SiteDims{3}));
    CHECK(oracle::max_abs_diff(out.matrix(), Matrix::identity(3) * Complex(1.0 / 3)) <= 1e-16);
  }
  SECTION("d = 3 on |0><0|") {
    CHECK(oracle::max_abs_diff(wh_apply(WHChannel(3), basis_projector(0, 3)).matrix(), Matrix::diagonal({0, 0.5, 0.5})) <= 1e-16);
  }
  SECTION("dimension mismatch") {
    CHECK(error_kind_of([] { wh_apply(WHChannel(3), basis_projector(0, 2)); }) == ErrorKind::dim_mismatch);
  }
  SECTION("matches the literal formula on random states") {
    Rng rng(41);
    for (std::size_t d : {2, 3, 4, 5}) {
      const auto rho = random_density_matrix(SiteDims{d}, rng);
      CHECK(oracle::max_abs_diff(wh_apply(WHChannel(d), rho).matrix(), oracle::naive_wh(rho.matrix())) <= 1e-15);
    }
  }
}

TEST_CASE("pure inputs give the spectrum {0, 1/(d-1), ...}", "[channels][property]") {
  Rng rng(43);
  for (std::size_t d : {2, 3, 4, 5, 7}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto phi = random_pure_state(SiteDims{d}, rng);
      const auto ev = hermitian_eigenvalues(wh_apply(WHChannel(d), DensityMatrix::from_pure(phi)).matrix()).eigenvalues;
      CHECK_THAT(ev[0], WithinAbs(0.0, 1e-10));
      for (std::size_t k = 1; k < d; ++k) CHECK_THAT(ev[k], WithinAbs(1.0 / double(d - 1), 1e-10));
    }
  }
}

TEST_CASE("product_apply", "[channels]") {
  Rng rng(47);
  SECTION("single factor is wh_apply") {
    const auto rho = random_density_matrix(SiteDims{4}, rng);
    CHECK(oracle::max_abs_diff(product_apply(ProductChannel(SiteDims{4}), rho).matrix(), wh_apply(WHChannel(4), rho).matrix()) <= 1e-15);
  }
  SECTION("product inputs factorize") {
    const auto r1 = random_density_matrix(SiteDims{3}, rng);
    const auto r2 = random_density_matrix(SiteDims{2}, rng);
    const DensityMatrix joint(tensor_product(r1.matrix(), r2.matrix()), SiteDims{3, 2});
    const Matrix expected = tensor_product(wh_apply(WHChannel(3), r1).matrix(), wh_apply(WHChannel(2), r2).matrix());
    CHECK(oracle::max_abs_diff(product_apply(ProductChannel(SiteDims{3, 2}), joint).matrix(), expected) <= 1e-14);
  }
  SECTION("maximally entangled input matches the inclusion-exclusion output") {
    const SiteDims dims{3, 3};
    const PureState omega(max_entangled(3), dims);
    const auto a = product_apply(ProductChannel(dims), DensityMatrix::from_pure(omega));
    CHECK(oracle::max_abs_diff(a.matrix(), xn_output(dims, omega).matrix()) <= 1e-12);
  }
  SECTION("single-site action matches the operator-basis oracle") {
    const std::vector<std::size_t> raw{2, 3, 2};
    const SiteDims dims(raw);
    const Matrix m = gaussian_matrix(12, 12, rng);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(oracle::max_abs_diff(apply_on_site(WHChannel(raw[j]), m, dims, j), oracle::naive_site_channel(m, raw, j)) <= 1e-14);
    }
  }
  SECTION("site actions commute and preserve the trace") {
    const SiteDims dims{3, 2, 4};
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_density_matrix(dims, rng, 1 + trial % 5);
      const Matrix a = apply_on_site(WHChannel(2), apply_on_site(WHChannel(3), rho.matrix(), dims, 0), dims, 1);
      const Matrix b = apply_on_site(WHChannel(3), apply_on_site(WHChannel(2), rho.matrix(), dims, 1), dims, 0);
      CHECK(oracle::max_abs_diff(a, b) <= 1e-12);
      const auto out = product_apply(ProductChannel(dims), rho);
      CHECK_THAT(std::abs(out.matrix().trace() - 1.0), WithinAbs(0.0, 1e-10));
      CHECK_NOTHROW(DensityMatrix(out.matrix(), dims));
    }
  }
  SECTION("dims must match exactly") {
    const auto rho = DensityMatrix::maximally_mixed(SiteDims{6});
    CHECK(error_kind_of([&] { product_apply(ProductChannel(SiteDims{2, 3}), rho); }) == ErrorKind::dim_mismatch);
    CHECK(error_kind_of([&] { apply_on_site(WHChannel(3), rho.matrix(), SiteDims{2, 3}, 0); }) == ErrorKind::dim_mismatch);
  }
}

TEST_CASE("choi_matrix", "[channels][cptp]") {
  for (std::size_t d : {2, 3, 4, 5}) {
    const Matrix choi = choi_matrix(WHChannel(d));
    CHECK_THAT(std::abs(choi.trace() - 1.0), WithinAbs(0.0, 1e-14));
    CHECK(hermitian_eigenvalues(choi).eigenvalues.front() >= -1e-12);
    CHECK(oracle::max_abs_diff(choi, oracle::naive_choi(d)) <= 1e-15);
    // (1 - SWAP) / (d (d - 1))
    Matrix swap(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    const Matrix closed = (Matrix::identity(d * d) - swap) * Complex(1.0 / double(d * (d - 1)));
    CHECK(oracle::max_abs_diff(choi, closed) <= 1e-15);
  }
}

TEST_CASE("verify_cptp", "[channels][cptp]") {
  for (std::size_t d : {2, 3, 4, 5}) {
    const auto r = verify_cptp(choi_matrix(WHChannel(d)), d);
    CHECK(r.min_eigenvalue >= -1e-10);
    CHECK(r.trace_preservation_error <= 1e-10);
  }
  SECTION("the bare transpose map is not completely positive") {
    // Choi of rho -> rho^T is SWAP / d, spectrum {+1/d, -1/d}
    const std::size_t d = 2;
    Matrix swap(4, 4);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 0.5;
    const auto r = verify_cptp(swap, d);
    CHECK_THAT(r.min_eigenvalue, WithinAbs(-0.5, 1e-14));
    CHECK(r.trace_preservation_error <= 1e-14);
  }
  SECTION("broken normalization is detected") {
    const auto r = verify_cptp(choi_matrix(WHChannel(3)) * Complex(2.0), 3);
    CHECK(r.trace_preservation_error > 0.1);
  }
  CHECK(error_kind_of([] { verify_cptp(Matrix::identity(5), 2); }) == ErrorKind::dim_mismatch);
}

TEST_CASE("covariance_residual", "[channels][symmetry]") {
  Rng rng(53);
  SECTION("identity unitary") {
    const auto rho = random_density_matrix(SiteDims{3}, rng);
    CHECK(covariance_residual(WHChannel(3), Matrix::identity(3), rho) == 0.0);
  }
  SECTION("diagonal phases on a basis projector") {
    Matrix u(3, 3);
    for (std::size_t i = 0; i < 3; ++i) u(i, i) = std::polar(1.0, 0.7 * double(i + 1));
    CHECK(covariance_residual(WHChannel(3), u, basis_projector(0, 3)) <= 1e-12);
  }
  SECTION("random unitaries, 100 pairs per dimension") {
    for (std::size_t d : {2, 3, 4}) {
      double worst = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        const Matrix u = random_unitary(d, rng);
        worst = std::max(worst, covariance_residual(WHChannel(d), u, random_density_matrix(SiteDims{d}, rng)));
      }
      CHECK(worst <= 1e-10);
    }
  }
  SECTION("non-unitary input") {
    const auto rho = random_density_matrix(SiteDims{2}, rng);
    CHECK(error_kind_of([&] { covariance_residual(WHChannel(2), Matrix::diagonal({1, 2}), rho); }) == ErrorKind::not_unitary);
  }
}

TEST_CASE("random_unitary is unitary", "[channels][random]") {
  Rng rng(59);
  for (std::size_t d : {1, 2, 3, 8}) CHECK(unitarity_deviation(random_unitary(d, rng)) <= 1e-12);
}
