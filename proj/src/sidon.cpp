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

#include "hyperexp/sidon.hpp"

#include <algorithm>
#include <random>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "hyperexp/error.hpp"
#include "hyperexp/field.hpp"

namespace hyperexp {

SidonCheck verify_sidon(int t, std::span<const Element> candidate) {
  check_dimension(t);
  for (Element e : candidate) check_element(e, t);

  SidonCheck result;
  const std::size_t d = candidate.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (candidate[i] == 0) {
      result.status = SidonStatus::kZeroElement;
      result.detail = "zero element at index " + std::to_string(i);
      return result;
    }
  }
  std::unordered_map<Element, std::size_t> seen;
  for (std::size_t i = 0; i < d; ++i) {
    auto [it, inserted] = seen.emplace(candidate[i], i);
    if (!inserted) {
      result.status = SidonStatus::kDuplicate;
      result.detail = "duplicate element " + std::to_string(candidate[i]) +
                      " at indices " + std::to_string(it->second) + " and " +
                      std::to_string(i);
      return result;
    }
  }

  // Scanning pairs in lexicographic order, the first pair to hit an already
  // seen sum is the later member of its collision; the earliest pair with
  // that sum is the other member. Minimize over all collisions.
  using Pair = std::pair<std::size_t, std::size_t>;
  std::unordered_map<Element, Pair> first_with_sum;
  std::optional<std::pair<Pair, Pair>> best;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const Element sum = candidate[i] ^ candidate[j];
      auto [it, inserted] = first_with_sum.emplace(sum, Pair{i, j});
      if (inserted) continue;
      std::pair<Pair, Pair> hit{it->second, Pair{i, j}};
      if (!best || hit < *best) best = hit;
    }
  }
  if (best) {
    const auto& [p, q] = *best;
    result.status = SidonStatus::kViolation;
    result.violation = SidonViolation{candidate[p.first], candidate[p.second],
                                      candidate[q.first], candidate[q.second]};
    result.detail = std::to_string(candidate[p.first]) + " + " +
                    std::to_string(candidate[p.second]) + " = " +
                    std::to_string(candidate[q.first]) + " + " +
                    std::to_string(candidate[q.second]);
  }
  return result;
}

SidonSet::SidonSet(int t, std::vector<Element> elements)
    : t_(t), elements_(std::move(elements)) {
  SidonCheck check = verify_sidon(t_, elements_);
  if (!check.ok()) {
    throw Error(ErrorCode::kInvalidInput, "not a Sidon set: " + check.detail);
  }
}

SidonSet random_sidon(int t, std::size_t target_d, std::uint64_t seed,
                      std::size_t max_attempts) {
  check_dimension(t);
  if (target_d < 1) {
    throw Error(ErrorCode::kInvalidInput, "target size must be at least 1");
  }
  if (max_attempts == 0) max_attempts = kDefaultAttemptsPerElement * target_d;

  std::mt19937_64 rng(seed);
  const Element mask = dimension_mask(t);
  std::vector<Element> chosen;
  chosen.reserve(target_d);
  std::unordered_set<Element> members;
  std::unordered_set<Element> sums;
  std::size_t rejections = 0;
  while (chosen.size() < target_d) {
    // 2^t is a power of two, so masking the raw draw is exactly uniform.
    const Element c = static_cast<Element>(rng()) & mask;
    bool accept = c != 0 && !members.contains(c);
    for (std::size_t i = 0; accept && i < chosen.size(); ++i) {
      accept = !sums.contains(c ^ chosen[i]);
    }
    if (!accept) {
      if (++rejections >= max_attempts) {
        throw AttemptsExhausted(chosen.size(), target_d);
      }
      continue;
    }
    for (Element s : chosen) sums.insert(c ^ s);
    members.insert(c);
    chosen.push_back(c);
  }
  return SidonSet(t, std::move(chosen));
}

SidonSet gold_sidon(int m) {
  if (!standard_modulus(m)) {
    throw Error(ErrorCode::kUnsupported,
                "gold construction supports m in [2, 8], got " + std::to_string(m));
  }
  const BinaryField field = BinaryField::standard(m);
  std::vector<Element> elements;
  elements.reserve(field.order() - 1);
  for (std::uint32_t x = 1; x < field.order(); ++x) {
    elements.push_back((x << m) | field.cube(x));
  }
  return SidonSet(2 * m, std::move(elements));
}

std::vector<Element> pair_sums(const SidonSet& s) {
  const auto& e = s.elements();
  std::vector<Element> sums;
  sums.reserve(e.size() * (e.size() - (e.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) sums.push_back(e[i] ^ e[j]);
  }
  std::vector<Element> sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidInput, "pair sums collide: corrupted Sidon set");
  }
  return sums;
}

}  // namespace hyperexp
