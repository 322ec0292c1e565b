// Copyright 2026 The hyperexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPEREXP_GF2_HPP
#define HYPEREXP_GF2_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hyperexp {

// Raw encoding of an element of Z_2^t. Hot loops work on this type directly;
// the dimension is validated once at module boundaries.
using Element = std::uint32_t;

// Exact rational used for spectral gaps and expansion bounds.
using Rational = boost::rational<std::int64_t>;

// Largest dimension for which anything is materialized (2^t entries).
inline constexpr int kMaxDimension = 30;

inline constexpr std::uint64_t group_order(int t) { return std::uint64_t{1} << t; }

inline constexpr Element dimension_mask(int t) {
  return t >= 32 ? ~Element{0} : static_cast<Element>((std::uint64_t{1} << t) - 1);
}

// (-1)^{<chi, x>} without dimension checks.
inline int character_sign(Element chi, Element x) {
  return (std::popcount(chi & x) & 1) ? -1 : 1;
}

// Throws kDimensionTooLarge / kInvalidInput for t outside [1, kMaxDimension].
void check_dimension(int t);

// Throws kInvalidInput when bits has a set bit at or above position t.
void check_element(Element bits, int t);

/// An element of Z_2^t together with its dimension.
class GroupElement {
 public:
  GroupElement(Element bits, int t);

  Element bits() const noexcept { return bits_; }
  int dimension() const noexcept { return dim_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Element bits_;
  int dim_;
};

// XOR. Throws kDimensionMismatch when the operands live in different groups.
GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement operator+(const GroupElement& a, const GroupElement& b);

// +1 or -1; the character indexed by chi evaluated at x.
int character(const GroupElement& chi, const GroupElement& x);

// "0b" followed by exactly t binary digits.
std::string format_binary(Element bits, int t);

// Accepts decimal or "0b"-prefixed binary with exactly t digits.
Element parse_element(std::string_view text, int t);

}  // namespace hyperexp

#endif  // HYPEREXP_GF2_HPP
