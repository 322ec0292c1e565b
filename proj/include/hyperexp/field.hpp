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

#ifndef HYPEREXP_FIELD_HPP
#define HYPEREXP_FIELD_HPP

#include <cstdint>
#include <optional>

namespace hyperexp {

// Polynomial over GF(2) as a bitmask; bit i is the coefficient of x^i.
using Polynomial = std::uint32_t;

int polynomial_degree(Polynomial p);

// Exhaustive trial division by every polynomial of degree <= deg(p)/2.
// Supported for degree <= 16.
bool is_irreducible(Polynomial p);

// Shipped moduli for m in [2, 8]; nullopt otherwise.
std::optional<Polynomial> standard_modulus(int m);

/**
 * GF(2^m) realized as GF(2)[x] / (modulus). Elements are bitmasks below
 * 2^m. The modulus is checked for irreducibility on construction.
 */
class BinaryField {
 public:
  explicit BinaryField(Polynomial modulus);

  // Field with the shipped modulus of degree m; throws kUnsupported otherwise.
  static BinaryField standard(int m);

  int degree() const noexcept { return degree_; }
  Polynomial modulus() const noexcept { return modulus_; }
  std::uint32_t order() const noexcept { return std::uint32_t{1} << degree_; }
  bool contains(std::uint32_t a) const noexcept { return a < order(); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t cube(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // Throws kInvalidInput for a == 0.
  std::uint32_t inverse(std::uint32_t a) const;

 private:
  std::uint32_t mul_unchecked(std::uint32_t a, std::uint32_t b) const;

  Polynomial modulus_;
  int degree_;
};

}  // namespace hyperexp

#endif  // HYPEREXP_FIELD_HPP
