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

#ifndef HYPEREXP_CAYLEY_HPP
#define HYPEREXP_CAYLEY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyperexp/gf2.hpp"
#include "hyperexp/linalg.hpp"
#include "hyperexp/sidon.hpp"

namespace hyperexp {

// In-place unnormalized Walsh-Hadamard transform; size must be a power of 2.
void walsh_hadamard(std::span<std::int64_t> values);

/// Cay(Z_2^t, generators): x ~ y iff x + y is a generator.
class CayleyGraph {
 public:
  // Generators must be distinct and nonzero.
  CayleyGraph(int t, std::vector<Element> generators);

  int dimension() const noexcept { return t_; }
  std::uint64_t vertex_count() const noexcept { return group_order(t_); }
  std::size_t degree() const noexcept { return generators_.size(); }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  bool adjacent(Element x, Element y) const;

  // Explicit adjacency lists, vertex v's neighbours in generator order.
  SparseGraph to_sparse() const;

 private:
  int t_;
  std::vector<Element> generators_;
  std::vector<Element> sorted_;
};

/**
 * The full eigenvalue list of a Cayley graph over Z_2^t, indexed by
 * character: value(chi) = sum over generators s of (-1)^{<chi, s>}.
 */
class Spectrum {
 public:
  Spectrum(int t, std::vector<std::int64_t> values);

  int dimension() const noexcept { return t_; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }
  std::int64_t value(Element chi) const { return values_.at(chi); }
  std::int64_t degree() const noexcept { return values_[0]; }
  // max |value(chi)| over chi != 0.
  std::int64_t lambda() const noexcept { return lambda_; }
  // 1 - lambda / d.
  Rational epsilon() const;
  // (lambda^2 + d) / 2.
  Rational mu() const;
  // Second largest value counted with multiplicity (lambda_2).
  std::int64_t second_largest() const;

  // (value, multiplicity) sorted by value descending.
  std::vector<std::pair<std::int64_t, std::uint64_t>> histogram() const;

 private:
  int t_;
  std::vector<std::int64_t> values_;
  std::int64_t lambda_ = 0;
};

// Exact spectrum through the Walsh-Hadamard transform of the indicator of
// the generators. Requires t <= kMaxDimension.
Spectrum spectrum(const CayleyGraph& g);

struct SquareRelationMismatch {
  Element chi;
  std::int64_t expected;  // (lambda_chi^2 - d) / 2
  std::int64_t actual;
};

struct SquareRelationCheck {
  bool multiset_equal = false;
  std::optional<SquareRelationMismatch> first_mismatch;

  bool ok() const noexcept { return multiset_equal && !first_mismatch; }
};

// Compares the spectrum of Cay(S') with {(lambda_i^2 - d) / 2} character by
// character (which implies multiset equality).
SquareRelationCheck verify_square_relation(const SidonSet& s);
// Same check for an arbitrary generator set; S' is the set of distinct
// nonzero pairwise sums.
SquareRelationCheck verify_square_relation(int t, std::span<const Element> s);

/// A multiset of group elements (element -> positive multiplicity).
class MultiSet {
 public:
  void add(Element x, std::uint64_t multiplicity = 1);

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t multiplicity(Element x) const;
  std::uint64_t sum_of_squares() const;
  const std::map<Element, std::uint64_t>& entries() const noexcept { return entries_; }

 private:
  std::map<Element, std::uint64_t> entries_;
  std::uint64_t size_ = 0;
};

struct MixingLemmaReport {
  std::uint64_t e_vw = 0;     // ordered count sum v_x w_y [x ~ y]
  double expected = 0.0;      // d |V| |W| / n
  double deviation = 0.0;     // |e_vw - expected|
  double bound = 0.0;         // lambda sqrt((sum v^2 - |V|^2/n)(sum w^2 - |W|^2/n))
  double slack = 0.0;         // bound - deviation
  bool holds = false;         // decided in exact integer arithmetic
};

MixingLemmaReport mixing_lemma_check(const CayleyGraph& g, const MultiSet& v,
                                     const MultiSet& w);
// Reuses a precomputed spectrum of g.
MixingLemmaReport mixing_lemma_check(const CayleyGraph& g, const Spectrum& spec,
                                     const MultiSet& v, const MultiSet& w);

struct DeCaenReport {
  std::uint64_t sum_of_squares = 0;
  double bound = 0.0;  // m (2m / (n-1) + n - 2)
  bool holds = false;  // exact
};

// sum d_i^2 <= m (2m/(n-1) + (n-2)). Throws kInvalidInput when the sequence
// length differs from n or the degrees do not sum to 2m.
DeCaenReport decaen_check(std::span<const std::uint64_t> degrees, std::uint64_t n,
                          std::uint64_t m);

struct CheegerReport {
  std::size_t degree = 0;
  double lambda2 = 0.0;
  Rational h{0};            // edge expansion ratio (exact or sampled)
  bool h_exact = false;     // false: sampled upper bound, non-certifying
  double bound = 0.0;       // D - h^2 / (2D)
  std::optional<bool> holds;  // set only when h is exact
};

inline constexpr std::size_t kExactCheegerVertices = 20;

// h is exact for at most 20 vertices; otherwise `samples` seeded random
// subsets give an upper bound on h.
CheegerReport cheeger_check(const SparseGraph& g, std::uint64_t seed = 0,
                            std::size_t samples = 4096);
// lambda_2 comes from the exact spectrum.
CheegerReport cheeger_check(const CayleyGraph& g, std::uint64_t seed = 0,
                            std::size_t samples = 4096);

}  // namespace hyperexp

#endif  // HYPEREXP_CAYLEY_HPP
