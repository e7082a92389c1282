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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "whmeo/error.hpp"

namespace whmeo {

/// Largest composite dimension for which dense outputs are built.
inline constexpr std::size_t kMaxTotalDimension = 1024;

/// Subsets are 64-bit masks; the enumerations over 2^N subsets keep N small
/// in practice, this only guards the representation.
inline constexpr std::size_t kMaxSites = 62;

/// A subset of sites {0, ..., N-1}; bit j set means site j belongs to it.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t bits) : bits_(bits) {}

  static constexpr SubsetMask none() { return SubsetMask{}; }
  static constexpr SubsetMask full(std::size_t n) {
    return SubsetMask{n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n))};
  }
  static constexpr SubsetMask single(std::size_t site) { return SubsetMask{std::uint64_t{1} << site}; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t site) const { return ((bits_ >> site) & 1U) != 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr SubsetMask complement(std::size_t n) const { return SubsetMask{full(n).bits_ & ~bits_}; }
  constexpr bool is_subset_of(SubsetMask other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits_ | b.bits_}; }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits_ & b.bits_}; }
  /// Set difference.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits_ & ~b.bits_}; }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Ordered local dimensions (d_1, ..., d_N) of a multipartite system, each at
/// least 2. Site 0 is the most significant factor of the row-major flattening.
/// The empty list describes a scalar (total dimension 1).
class SiteDims {
 public:
  SiteDims() = default;

  explicit SiteDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.size() > kMaxSites) {
      throw Error(ErrorKind::invalid_argument, "too many sites: " + std::to_string(dims_.size()));
    }
    total_ = 1;
    for (std::size_t d : dims_) {
      if (d < 2) throw Error(ErrorKind::invalid_argument, "site dimension must be >= 2, got " + std::to_string(d));
      if (total_ > (std::size_t{1} << 40) / d) throw Error(ErrorKind::dimension_too_large, "total dimension overflows");
      total_ *= d;
    }
  }

  SiteDims(std::initializer_list<std::size_t> dims) : SiteDims(std::vector<std::size_t>(dims)) {}

  std::size_t size() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }
  std::size_t operator[](std::size_t site) const { return dims_[site]; }
  std::span<const std::size_t> values() const { return dims_; }
  auto begin() const { return dims_.begin(); }
  auto end() const { return dims_.end(); }

  /// Product of all local dimensions.
  std::size_t total() const { return total_; }

  SubsetMask full_mask() const { return SubsetMask::full(dims_.size()); }

  /// Row-major strides: stride[j] = prod_{k > j} d_k.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t j = dims_.size(); j-- > 1;) s[j - 1] = s[j] * dims_[j];
    return s;
  }

  /// Dimensions of the sites in `mask`, in ascending site order.
  SiteDims restrict_to(SubsetMask mask) const {
    require_mask(mask);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      if (mask.contains(j)) out.push_back(dims_[j]);
    }
    return SiteDims(std::move(out));
  }

  /// Product of the dimensions of the sites in `mask`.
  std::size_t total_of(SubsetMask mask) const {
    std::size_t t = 1;
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      if (mask.contains(j)) t *= dims_[j];
    }
    return t;
  }

  void require_mask(SubsetMask mask) const {
    if (!mask.is_subset_of(full_mask())) {
      throw Error(ErrorKind::invalid_argument, "subset mask has bits beyond " + std::to_string(dims_.size()) + " sites");
    }
  }

  friend bool operator==(const SiteDims& a, const SiteDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

inline std::string to_string(const SiteDims& dims) {
  std::string s;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (j != 0) s += ',';
    s += std::to_string(dims[j]);
  }
  return s;
}

inline void require_total_at_most(const SiteDims& dims, std::size_t limit = kMaxTotalDimension) {
  if (dims.total() > limit) {
    throw Error(ErrorKind::dimension_too_large,
                "total dimension " + std::to_string(dims.total()) + " exceeds " + std::to_string(limit));
  }
}

}  // namespace whmeo
