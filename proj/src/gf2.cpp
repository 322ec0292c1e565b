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

#include "hyperexp/gf2.hpp"

#include <charconv>

#include "hyperexp/error.hpp"

namespace hyperexp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kDimensionTooLarge: return "dimension_too_large";
    case ErrorCode::kInvalidInput: return "invalid_input";
    case ErrorCode::kSizeLimit: return "size_limit";
    case ErrorCode::kAttemptsExhausted: return "attempts_exhausted";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kParse: return "parse_error";
  }
  return "unknown";
}

void check_dimension(int t) {
  if (t < 1) {
    throw Error(ErrorCode::kInvalidInput,
                "dimension must be positive, got " + std::to_string(t));
  }
  if (t > kMaxDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "dimension " + std::to_string(t) + " exceeds the cap of " +
                    std::to_string(kMaxDimension));
  }
}

void check_element(Element bits, int t) {
  if ((bits & ~dimension_mask(t)) != 0) {
    throw Error(ErrorCode::kInvalidInput, "element " + std::to_string(bits) +
                                              " does not fit in " +
                                              std::to_string(t) + " bits");
  }
}

GroupElement::GroupElement(Element bits, int t) : bits_(bits), dim_(t) {
  check_dimension(t);
  check_element(bits, t);
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot add elements of Z_2^" + std::to_string(a.dimension()) +
                    " and Z_2^" + std::to_string(b.dimension()));
  }
  return GroupElement(a.bits() ^ b.bits(), a.dimension());
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  return add(a, b);
}

int character(const GroupElement& chi, const GroupElement& x) {
  if (chi.dimension() != x.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "character and argument differ in dimension");
  }
  return character_sign(chi.bits(), x.bits());
}

std::string format_binary(Element bits, int t) {
  check_dimension(t);
  check_element(bits, t);
  std::string out = "0b";
  out.reserve(2 + static_cast<std::size_t>(t));
  for (int i = t - 1; i >= 0; --i) out.push_back(((bits >> i) & 1) ? '1' : '0');
  return out;
}

Element parse_element(std::string_view text, int t) {
  check_dimension(t);
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    std::string_view digits = text.substr(2);
    if (digits.size() != static_cast<std::size_t>(t)) {
      throw Error(ErrorCode::kParse, "binary element '" + std::string(text) +
                                         "' must have exactly " +
                                         std::to_string(t) + " digits");
    }
    Element bits = 0;
    for (char c : digits) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kParse,
                    "bad binary digit in '" + std::string(text) + "'");
      }
      bits = (bits << 1) | static_cast<Element>(c - '0');
    }
    return bits;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kParse, "cannot parse element '" + std::string(text) + "'");
  }
  if (value >= group_order(t)) {
    throw Error(ErrorCode::kInvalidInput, "element " + std::string(text) +
                                              " does not fit in " +
                                              std::to_string(t) + " bits");
  }
  return static_cast<Element>(value);
}

}  // namespace hyperexp
