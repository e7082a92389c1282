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
#include "whmeo/entropy.hpp"
#include "whmeo/random.hpp"

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

DensityMatrix diag_state(std::initializer_list<double> values) {
  return DensityMatrix(Matrix::diagonal(values), SiteDims{values.size()});
}

}  // namespace

TEST_CASE("von_neumann_entropy", "[entropy]") {
  Rng rng(61);
  CHECK_THAT(von_neumann_entropy(DensityMatrix::from_pure(random_pure_state(SiteDims{4}, rng))), WithinAbs(0.0, 1e-13));
  for (std::size_t d : {2, 3, 7}) {
    CHECK_THAT(von_neumann_entropy(DensityMatrix::maximally_mixed(SiteDims{d})), WithinAbs(std::log(double(d)), 1e-14));
  }
  CHECK_THAT(von_neumann_entropy(diag_state({0.5, 0.5, 0.0})), WithinAbs(std::log(2.0), 1e-15));
}

TEST_CASE("renyi_entropy", "[entropy]") {
  Rng rng(67);
  for (double p : {1.1, 1.5, 2.0}) {
    CHECK_THAT(renyi_entropy(DensityMatrix::maximally_mixed(SiteDims{5}), p), WithinAbs(std::log(5.0), 1e-14));
    CHECK_THAT(renyi_entropy(DensityMatrix::from_pure(random_pure_state(SiteDims{3}, rng)), p), WithinAbs(0.0, 1e-13));
  }
  CHECK_THAT(renyi_entropy(diag_state({0.75, 0.25}), 2.0), WithinAbs(std::log(8.0 / 5.0), 1e-15));

  SECTION("order checks") {
    const auto rho = DensityMatrix::maximally_mixed(SiteDims{2});
    CHECK(error_kind_of([&] { renyi_entropy(rho, 1.0); }) == ErrorKind::invalid_exponent);
    CHECK(error_kind_of([&] { renyi_entropy(rho, 0.5); }) == ErrorKind::invalid_exponent);
    CHECK(error_kind_of([&] { renyi_entropy(rho, 2.5); }) == ErrorKind::invalid_exponent);
    CHECK_THAT(renyi_entropy(rho, 2.5, OrderRange::unrestricted), WithinAbs(std::log(2.0), 1e-14));
    CHECK_THAT(entropy(rho, 1.0), WithinAbs(std::log(2.0), 1e-15));
  }
  SECTION("continuity as p -> 1") {
    const auto rho = random_density_matrix(SiteDims{6}, rng);
    const double s1 = von_neumann_entropy(rho);
    double previous = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-5, 1e-7, 1e-9}) {
      const double gap = std::abs(renyi_entropy(rho, 1.0 + eps) - s1);
      CHECK(gap <= previous + 1e-14);
      previous = gap;
    }
    CHECK(previous <= 1e-8);
  }
  SECTION("clearly negative eigenvalues are rejected") {
    const auto bad = DensityMatrix::unchecked(Matrix::diagonal({1.1, -0.1}), SiteDims{2});
    CHECK(error_kind_of([&] { von_neumann_entropy(bad); }) == ErrorKind::invalid_state);
    const auto rounding = DensityMatrix::unchecked(Matrix::diagonal({1.0 + 1e-13, -1e-13}), SiteDims{2});
    CHECK_THAT(von_neumann_entropy(rounding), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("renyi_from_pnorm agrees with the spectral formula", "[entropy]") {
  CHECK_THAT(renyi_from_pnorm(DensityMatrix::maximally_mixed(SiteDims{2}), 2.0), WithinAbs(std::log(2.0), 1e-15));
  Rng rng(71);
  CHECK_THAT(renyi_from_pnorm(DensityMatrix::from_pure(random_pure_state(SiteDims{3}, rng)), 1.7), WithinAbs(0.0, 1e-13));
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density_matrix(SiteDims{4}, rng);
    CHECK_THAT(renyi_from_pnorm(rho, 1.5), WithinAbs(renyi_entropy(rho, 1.5), 1e-10));
  }
  CHECK(error_kind_of([] { renyi_from_pnorm(DensityMatrix::maximally_mixed(SiteDims{2}), 1.0); }) == ErrorKind::invalid_exponent);
}

TEST_CASE("entropy_output", "[entropy]") {
  Rng rng(73);
  SECTION("single Gamma_3 is log 2 for every input") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto phi = random_pure_state(SiteDims{3}, rng);
      CHECK_THAT(entropy_output(ProductChannel(SiteDims{3}), phi, 1.0), WithinAbs(std::log(2.0), 1e-12));
    }
  }
  SECTION("single Gamma_2 outputs are pure") {
    const auto phi = random_pure_state(SiteDims{2}, rng);
    for (double p : {1.0, 1.5, 2.0}) CHECK_THAT(entropy_output(ProductChannel(SiteDims{2}), phi, p), WithinAbs(0.0, 1e-12));
  }
  SECTION("product input into Gamma_3 (x) Gamma_3") {
    const SiteDims dims{3, 3};
    const auto s1 = random_pure_state(SiteDims{3}, rng);
    const auto s2 = random_pure_state(SiteDims{3}, rng);
    const PureState phi(tensor_product(s1.amplitudes(), s2.amplitudes()), dims);
    CHECK_THAT(entropy_output(ProductChannel(dims), phi, 2.0), WithinAbs(2.0 * std::log(2.0), 1e-12));
    // the 9x9 output assembled from the two single-site outputs
    const Matrix expected = tensor_product(wh_apply(WHChannel(3), DensityMatrix::from_pure(s1)).matrix(),
                                           wh_apply(WHChannel(3), DensityMatrix::from_pure(s2)).matrix());
    CHECK((product_apply(ProductChannel(dims), DensityMatrix::from_pure(phi)).matrix() - expected).max_abs_entry() <= 1e-12);
    const double purity = std::pow(expected.frobenius_norm(), 2);
    CHECK_THAT(-std::log(purity), WithinAbs(2.0 * std::log(2.0), 1e-12));
  }
  SECTION("errors") {
    const auto phi = random_pure_state(SiteDims{2, 2}, rng);
    CHECK(error_kind_of([&] { entropy_output(ProductChannel(SiteDims{4}), phi, 1.0); }) == ErrorKind::dim_mismatch);
    CHECK(error_kind_of([&] { entropy_output(ProductChannel(SiteDims{2, 2}), phi, 0.9); }) == ErrorKind::invalid_exponent);
  }
}

TEST_CASE("entropy properties over random states", "[entropy][property]") {
  Rng rng(79);
  std::uniform_int_distribution<std::size_t> side(2, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = side(rng);
    const auto rho = random_density_matrix(SiteDims{n}, rng, 1 + trial % n);
    const double s1 = von_neumann_entropy(rho);
    const double s2 = renyi_entropy(rho, 2.0);
    CHECK(s1 <= std::log(double(n)) + 1e-10);
    double previous = s1;
    for (int k = 1; k <= 10; ++k) {
      const double p = 1.0 + 0.1 * k;
      const double sp = entropy(rho, p);
      CHECK(sp <= previous + 1e-10);
      CHECK(s2 <= sp + 1e-10);
      previous = sp;
    }
    // unitary invariance
    const Matrix u = random_unitary(n, rng);
    const DensityMatrix rotated = DensityMatrix::unchecked(u * rho.matrix() * u.adjoint(), rho.dims());
    for (double p : {1.0, 1.5, 2.0}) CHECK_THAT(entropy(rotated, p), WithinAbs(entropy(rho, p), 1e-10));
  }
  // additivity on tensor products
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_density_matrix(SiteDims{3}, rng);
    const auto b = random_density_matrix(SiteDims{4}, rng);
    const DensityMatrix ab = DensityMatrix::unchecked(tensor_product(a.matrix(), b.matrix()), SiteDims{3, 4});
    for (double p : {1.0, 1.3, 2.0}) CHECK_THAT(entropy(ab, p), WithinAbs(entropy(a, p) + entropy(b, p), 1e-9));
  }
}

TEST_CASE("p-norm form of the channel output entropy", "[entropy][property]") {
  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const SiteDims dims = trial % 2 == 0 ? SiteDims{3, 2} : SiteDims{4};
    const auto phi = random_pure_state(dims, rng);
    const double p = 1.05 + 0.95 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const ProductChannel pc(dims);
    const double norm = schatten_p_norm(product_apply(pc, DensityMatrix::from_pure(phi)).matrix(), p);
    CHECK_THAT(-(p / (p - 1.0)) * std::log(norm), WithinAbs(entropy_output(pc, phi, p), 1e-10));
  }
}
