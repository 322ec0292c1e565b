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

#include "hyperexp/field.hpp"

#include <array>
#include <bit>
#include <string>

#include "hyperexp/error.hpp"

namespace hyperexp {

namespace {

// x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1
constexpr std::array<Polynomial, 7> kStandardModuli = {
    0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B};

constexpr int kMaxIrreducibilityDegree = 16;

// Remainder of a modulo b in GF(2)[x].
Polynomial poly_mod(Polynomial a, Polynomial b) {
  const int db = polynomial_degree(b);
  for (int da = polynomial_degree(a); da >= db && a != 0; da = polynomial_degree(a)) {
    a ^= b << (da - db);
  }
  return a;
}

}  // namespace

int polynomial_degree(Polynomial p) {
  return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1;
}

bool is_irreducible(Polynomial p) {
  const int deg = polynomial_degree(p);
  if (deg < 1) return false;
  if (deg > kMaxIrreducibilityDegree) {
    throw Error(ErrorCode::kUnsupported,
                "irreducibility check supports degree <= 16, got " +
                    std::to_string(deg));
  }
  for (Polynomial q = 2; polynomial_degree(q) <= deg / 2; ++q) {
    if (poly_mod(p, q) == 0) return false;
  }
  return true;
}

std::optional<Polynomial> standard_modulus(int m) {
  if (m < 2 || m > 8) return std::nullopt;
  return kStandardModuli[static_cast<std::size_t>(m - 2)];
}

BinaryField::BinaryField(Polynomial modulus)
    : modulus_(modulus), degree_(polynomial_degree(modulus)) {
  if (degree_ < 1 || !is_irreducible(modulus)) {
    throw Error(ErrorCode::kInvalidInput,
                "modulus " + std::to_string(modulus) + " is not irreducible");
  }
}

BinaryField BinaryField::standard(int m) {
  auto modulus = standard_modulus(m);
  if (!modulus) {
    throw Error(ErrorCode::kUnsupported,
                "no shipped modulus for GF(2^" + std::to_string(m) + ")");
  }
  return BinaryField(*modulus);
}

std::uint32_t BinaryField::add(std::uint32_t a, std::uint32_t b) const {
  if (!contains(a) || !contains(b)) {
    throw Error(ErrorCode::kInvalidInput, "operand outside the field");
  }
  return a ^ b;
}

std::uint32_t BinaryField::mul_unchecked(std::uint32_t a, std::uint32_t b) const {
  // Shift-and-add with reduction after every shift keeps everything below 2^m.
  const std::uint32_t top = std::uint32_t{1} << degree_;
  std::uint32_t result = 0;
  while (b != 0) {
    if (b & 1) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_;
  }
  return result;
}

std::uint32_t BinaryField::mul(std::uint32_t a, std::uint32_t b) const {
  if (!contains(a) || !contains(b)) {
    throw Error(ErrorCode::kInvalidInput, "operand outside the field");
  }
  return mul_unchecked(a, b);
}

std::uint32_t BinaryField::cube(std::uint32_t a) const {
  if (!contains(a)) throw Error(ErrorCode::kInvalidInput, "operand outside the field");
  return mul_unchecked(mul_unchecked(a, a), a);
}

std::uint32_t BinaryField::pow(std::uint32_t a, std::uint64_t e) const {
  if (!contains(a)) throw Error(ErrorCode::kInvalidInput, "operand outside the field");
  std::uint32_t result = 1;
  while (e != 0) {
    if (e & 1) result = mul_unchecked(result, a);
    a = mul_unchecked(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t BinaryField::inverse(std::uint32_t a) const {
  if (a == 0 || !contains(a)) {
    throw Error(ErrorCode::kInvalidInput, "zero has no multiplicative inverse");
  }
  return pow(a, order() - 2);
}

}  // namespace hyperexp
