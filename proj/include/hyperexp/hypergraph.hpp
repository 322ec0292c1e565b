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

#ifndef HYPEREXP_HYPERGRAPH_HPP
#define HYPEREXP_HYPERGRAPH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperexp/cayley.hpp"
#include "hyperexp/gf2.hpp"
#include "hyperexp/sidon.hpp"

namespace hyperexp {

/// Skeleton edge, canonicalized so that u < v.
struct Edge {
  Element u = 0;
  Element v = 0;

  static Edge of(Element a, Element b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A triple of H with sorted vertices a < b < c and the unique clique
/// centre x such that {a, b, c} is contained in C_x.
struct Triple {
  Element a = 0;
  Element b = 0;
  Element c = 0;
  Element center = 0;

  static Triple of(Element p, Element q, Element r, Element center);
  std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }
  bool contains(Element x) const { return x == a || x == b || x == c; }
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Sorted, duplicate-free skeleton edge indices.
using EdgeSubset = std::vector<std::size_t>;

inline constexpr std::uint64_t kMaxMaterializedTriples = 1'000'000'000;

/**
 * The 3-uniform hypergraph H(Z_2^t, S). Its triples are
 * {x + s_i, x + s_j, x + s_k} for distinct generators, its skeleton is
 * Cay(Z_2^t, S') with S' the pairwise sums of S.
 *
 * Without materialization every query is answered from (t, S) through a
 * pair-sum lookup: is_edge and edge_cliques are O(1), triples_containing is
 * O(d). A materialized build additionally stores the lexicographically
 * sorted edge list E and triple list T and asserts the degree invariants.
 */
class Hypergraph3 {
 public:
  // Throws kInvalidInput when |S| < 3, kSizeLimit when materializing more
  // than kMaxMaterializedTriples triples.
  static Hypergraph3 build(const SidonSet& s, bool materialize);

  int dimension() const noexcept { return sidon_.dimension(); }
  std::uint64_t vertex_count() const noexcept { return group_order(dimension()); }
  std::size_t degree() const noexcept { return sidon_.size(); }
  const SidonSet& sidon() const noexcept { return sidon_; }
  // S' in pair order (i < j lexicographic); pair index p refers to this order.
  const std::vector<Element>& pair_sums() const noexcept { return sums_; }
  std::pair<std::size_t, std::size_t> pair_generators(std::size_t p) const { return pairs_[p]; }
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> pair_of_sum(Element sum) const;

  // n C(d,2) / 2 and n C(d,3).
  std::uint64_t edge_count() const noexcept;
  std::uint64_t triple_count() const noexcept;
  // 2d - 4.
  std::size_t pair_degree() const noexcept { return 2 * degree() - 4; }

  bool is_edge(Element u, Element v) const;
  // Exactly the two x with e inside C_x, ascending. Throws if e is not an edge.
  std::array<Element, 2> edge_cliques(const Edge& e) const;
  // The 2d - 4 triples through e: clique of the first centre first, then
  // the second, third vertex in generator order.
  std::vector<Triple> triples_containing(const Edge& e) const;
  // C_x in generator order.
  std::vector<Element> clique(Element x) const;

  bool materialized() const noexcept { return materialized_; }
  std::span<const Edge> edges() const;
  std::span<const Triple> triples() const;
  std::optional<std::size_t> edge_index(const Edge& e) const;
  std::size_t require_edge_index(const Edge& e) const;

 private:
  explicit Hypergraph3(SidonSet s);
  void materialize();
  void check_vertex(Element x) const;

  SidonSet sidon_;
  std::vector<Element> sums_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::unordered_map<Element, std::size_t> pair_lookup_;
  bool materialized_ = false;
  std::vector<Edge> edges_;
  std::vector<Triple> triples_;
};

// Normalizes (sorts, dedups) and range-checks an edge subset.
EdgeSubset make_edge_subset(const Hypergraph3& h, std::vector<std::size_t> indices);

// N_E(F) = {e in E \ F : e u f in T for some f in F}.
EdgeSubset neighborhood_E(const Hypergraph3& h, const EdgeSubset& f);
// N_T(F) = triples containing an edge of F, minus triangles with all three
// edges in F. Sorted.
std::vector<Triple> neighborhood_T(const Hypergraph3& h, const EdgeSubset& f);
// N_V(F) = vertices v outside V(F) with v u f in T for some f in F. Sorted.
std::vector<Element> neighborhood_V(const Hypergraph3& h, const EdgeSubset& f);
// V(F): vertices covered by F, sorted.
std::vector<Element> covered_vertices(const Hypergraph3& h, const EdgeSubset& f);

enum class ExpansionKind { kEdge, kTriple, kVertex };

const char* to_string(ExpansionKind kind);

struct ExpansionResult {
  ExpansionKind kind = ExpansionKind::kEdge;
  Rational ratio{0};
  EdgeSubset witness;
  std::uint64_t subsets_examined = 0;
};

inline constexpr std::size_t kMaxBruteForceEdges = 24;

// Exact h_E / h_T (|F| <= |E|/2) or h_V (|V(F)| <= n/2) by enumerating
// every qualifying F. Ties go to the smaller |F|, then to the smaller
// bitmask over edge indices. Throws kSizeLimit when |E| > 24.
ExpansionResult expansion_bruteforce(const Hypergraph3& h, ExpansionKind kind);

struct ExpansionCertificate {
  Rational epsilon{0};
  Rational edge_bound{0};    // epsilon^2 / 128
  Rational triple_bound{0};  // epsilon^2 d / 64
};

ExpansionCertificate expansion_certificate(const Hypergraph3& h);
ExpansionCertificate expansion_certificate(const Hypergraph3& h, const Spectrum& base);

struct CrossingCount {
  std::uint64_t count = 0;            // unordered triples with one vertex in each set
  std::uint64_t incidence_count = 0;  // e(W, C), W = centre multiset of E(A, B)
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double main_term = 0.0;             // (d^3 - d^2) alpha beta gamma n
  double window = 0.0;                // sum of the three error terms
  bool count_within = false;
  bool incidence_within = false;
  double relative_deviation = 0.0;    // (count - main_term) / main_term
};

// Throws kInvalidInput if the sets intersect or leave Z_2^t.
CrossingCount count_crossing_triples(const Hypergraph3& h, std::span<const Element> a,
                                     std::span<const Element> b,
                                     std::span<const Element> c);
CrossingCount count_crossing_triples(const Hypergraph3& h, const Spectrum& base,
                                     std::span<const Element> a,
                                     std::span<const Element> b,
                                     std::span<const Element> c);

// Seeded uniform split of Z_2^t into parts of sizes floor(n/3), floor(n/3)
// and the remainder; each part sorted.
std::array<std::vector<Element>, 3> random_thirds(int t, std::uint64_t seed);

// Both centres of every skeleton edge with one endpoint in A and the other
// in B (each unordered edge once).
MultiSet center_multiset(const Hypergraph3& h, std::span<const Element> a,
                         std::span<const Element> b);

}  // namespace hyperexp

#endif  // HYPEREXP_HYPERGRAPH_HPP
