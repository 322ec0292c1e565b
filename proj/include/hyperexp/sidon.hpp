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

#ifndef HYPEREXP_SIDON_HPP
#define HYPEREXP_SIDON_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperexp/gf2.hpp"

namespace hyperexp {

// s1 + s2 == s1p + s2p with {s1, s2} != {s1p, s2p}.
struct SidonViolation {
  Element s1, s2, s1p, s2p;
  friend bool operator==(const SidonViolation&, const SidonViolation&) = default;
};

enum class SidonStatus { kOk, kViolation, kZeroElement, kDuplicate };

struct SidonCheck {
  SidonStatus status = SidonStatus::kOk;
  std::optional<SidonViolation> violation;
  std::string detail;

  bool ok() const noexcept { return status == SidonStatus::kOk; }
};

// First defect in a deterministic scan. Structural defects (zero element,
// duplicates) are reported before sum collisions; among collisions the pair
// of index pairs ((i,j), (k,l)) that is smallest lexicographically wins.
SidonCheck verify_sidon(int t, std::span<const Element> candidate);

/**
 * A Sidon set S in Z_2^t: distinct nonzero elements whose C(d,2) pairwise
 * sums are all distinct. Element order is preserved from construction and
 * determines every derived enumeration order.
 */
class SidonSet {
 public:
  // Throws kInvalidInput (with the check detail) if elements are not Sidon.
  SidonSet(int t, std::vector<Element> elements);

  int dimension() const noexcept { return t_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  Element operator[](std::size_t i) const { return elements_[i]; }

  friend bool operator==(const SidonSet&, const SidonSet&) = default;

 private:
  int t_;
  std::vector<Element> elements_;
};

inline constexpr std::size_t kDefaultAttemptsPerElement = 1000;

// Seeded rejection sampling. max_attempts == 0 means 1000 * target_d.
// Throws AttemptsExhausted with the partial size reached.
SidonSet random_sidon(int t, std::size_t target_d, std::uint64_t seed,
                      std::size_t max_attempts = 0);

// {(x, x^3) : x in GF(2^m)*} packed as (x << m) | x^3, for m in [2, 8].
SidonSet gold_sidon(int m);

// s_i + s_j for i < j, in lexicographic order of (i, j).
std::vector<Element> pair_sums(const SidonSet& s);

}  // namespace hyperexp

#endif  // HYPEREXP_SIDON_HPP
