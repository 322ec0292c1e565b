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

#include "hyperexp/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hyperexp/error.hpp"
#include "hyperexp/random.hpp"

namespace hyperexp {

namespace {

std::uint64_t choose2(std::uint64_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }
std::uint64_t choose3(std::uint64_t d) { return d < 3 ? 0 : d * (d - 1) * (d - 2) / 6; }

void invariant(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidInput, "hypergraph invariant violated: " + what);
}

}  // namespace

Triple Triple::of(Element p, Element q, Element r, Element center) {
  std::array<Element, 3> v{p, q, r};
  std::sort(v.begin(), v.end());
  return Triple{v[0], v[1], v[2], center};
}

Hypergraph3::Hypergraph3(SidonSet s) : sidon_(std::move(s)) {
  sums_ = hyperexp::pair_sums(sidon_);
  const std::size_t d = sidon_.size();
  pairs_.reserve(sums_.size());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) pairs_.emplace_back(i, j);
  }
  pair_lookup_.reserve(sums_.size());
  for (std::size_t p = 0; p < sums_.size(); ++p) pair_lookup_.emplace(sums_[p], p);
}

Hypergraph3 Hypergraph3::build(const SidonSet& s, bool materialize) {
  if (s.size() < 3) {
    throw Error(ErrorCode::kInvalidInput, "hypergraph needs |S| >= 3, got " + std::to_string(s.size()));
  }
  Hypergraph3 h(s);
  if (materialize) {
    const std::uint64_t triples = h.triple_count();
    if (triples > kMaxMaterializedTriples || s.dimension() > kMaxDimension) {
      throw Error(ErrorCode::kSizeLimit, "materializing " + std::to_string(triples) +
                                             " triples exceeds the limit of " +
                                             std::to_string(kMaxMaterializedTriples));
    }
    h.materialize();
  }
  return h;
}

std::size_t Hypergraph3::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= degree() || j >= degree()) {
    throw Error(ErrorCode::kInvalidInput, "pair index needs two distinct generator indices");
  }
  if (i > j) std::swap(i, j);
  const std::size_t d = degree();
  // Row i of the strict upper triangle starts after sum_{r<i} (d - 1 - r).
  return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

std::optional<std::size_t> Hypergraph3::pair_of_sum(Element sum) const {
  auto it = pair_lookup_.find(sum);
  if (it == pair_lookup_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Hypergraph3::edge_count() const noexcept {
  return vertex_count() * choose2(degree()) / 2;
}

std::uint64_t Hypergraph3::triple_count() const noexcept {
  return vertex_count() * choose3(degree());
}

void Hypergraph3::check_vertex(Element x) const { check_element(x, dimension()); }

bool Hypergraph3::is_edge(Element u, Element v) const {
  check_vertex(u);
  check_vertex(v);
  return pair_lookup_.contains(u ^ v);
}

std::array<Element, 2> Hypergraph3::edge_cliques(const Edge& e) const {
  check_vertex(e.u);
  check_vertex(e.v);
  auto p = pair_of_sum(e.u ^ e.v);
  if (!p) {
    throw Error(ErrorCode::kInvalidInput, "{" + std::to_string(e.u) + ", " +
                                              std::to_string(e.v) + "} is not a skeleton edge");
  }
  const auto [i, j] = pairs_[*p];
  const Element x1 = e.u ^ sidon_[i];
  const Element x2 = e.u ^ sidon_[j];
  invariant(x1 != x2, "edge with a single centre");
  return x1 < x2 ? std::array<Element, 2>{x1, x2} : std::array<Element, 2>{x2, x1};
}

std::vector<Triple> Hypergraph3::triples_containing(const Edge& e) const {
  const auto centers = edge_cliques(e);
  const auto [i, j] = pairs_[*pair_of_sum(e.u ^ e.v)];
  std::vector<Triple> out;
  out.reserve(pair_degree());
  for (Element x : centers) {
    for (std::size_t k = 0; k < degree(); ++k) {
      if (k == i || k == j) continue;
      out.push_back(Triple::of(e.u, e.v, x ^ sidon_[k], x));
    }
  }
  return out;
}

std::vector<Element> Hypergraph3::clique(Element x) const {
  check_vertex(x);
  std::vector<Element> members;
  members.reserve(degree());
  for (Element s : sidon_.elements()) members.push_back(x ^ s);
  return members;
}

std::span<const Edge> Hypergraph3::edges() const {
  if (!materialized_) throw Error(ErrorCode::kInvalidInput, "edge list requires a materialized build");
  return edges_;
}

std::span<const Triple> Hypergraph3::triples() const {
  if (!materialized_) throw Error(ErrorCode::kInvalidInput, "triple list requires a materialized build");
  return triples_;
}

std::optional<std::size_t> Hypergraph3::edge_index(const Edge& e) const {
  if (!materialized_) throw Error(ErrorCode::kInvalidInput, "edge indices require a materialized build");
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Hypergraph3::require_edge_index(const Edge& e) const {
  auto idx = edge_index(e);
  if (!idx) {
    throw Error(ErrorCode::kInvalidInput, "{" + std::to_string(e.u) + ", " +
                                              std::to_string(e.v) + "} is not a skeleton edge");
  }
  return *idx;
}

void Hypergraph3::materialize() {
  const std::uint64_t n = vertex_count();
  const std::size_t d = degree();
  const auto& s = sidon_.elements();

  edges_.clear();
  edges_.reserve(edge_count());
  for (Element u = 0; u < n; ++u) {
    for (Element sum : sums_) {
      const Element v = u ^ sum;
      if (u < v) edges_.push_back(Edge{u, v});
    }
  }
  std::sort(edges_.begin(), edges_.end());

  triples_.clear();
  triples_.reserve(triple_count());
  for (Element x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        for (std::size_t k = j + 1; k < d; ++k) {
          triples_.push_back(Triple::of(x ^ s[i], x ^ s[j], x ^ s[k], x));
        }
      }
    }
  }
  std::sort(triples_.begin(), triples_.end());
  materialized_ = true;

  invariant(edges_.size() == edge_count(), "|E| != n C(d,2) / 2");
  invariant(triples_.size() == triple_count(), "|T| != n C(d,3)");
  invariant(std::adjacent_find(triples_.begin(), triples_.end(),
                               [](const Triple& a, const Triple& b) {
                                 return a.a == b.a && a.b == b.b && a.c == b.c;
                               }) == triples_.end(),
            "a triple lies in two cliques");

  std::vector<std::uint64_t> vertex_degree(n, 0);
  std::vector<std::uint64_t> edge_degree(edges_.size(), 0);
  for (const Triple& t : triples_) {
    ++vertex_degree[t.a];
    ++vertex_degree[t.b];
    ++vertex_degree[t.c];
    for (const Edge& e : t.edges()) {
      auto idx = edge_index(e);
      invariant(idx.has_value(), "triple edge missing from the skeleton");
      ++edge_degree[*idx];
    }
  }
  const std::uint64_t expected_vertex = 3 * choose3(d);
  for (std::uint64_t deg : vertex_degree) invariant(deg == expected_vertex, "vertex degree != 3 C(d,3)");
  for (std::uint64_t deg : edge_degree) invariant(deg == pair_degree(), "pair degree != 2d - 4");
}

EdgeSubset make_edge_subset(const Hypergraph3& h, std::vector<std::size_t> indices) {
  const std::size_t m = h.edges().size();
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= m) {
    throw Error(ErrorCode::kInvalidInput, "edge index out of range");
  }
  return indices;
}

namespace {

std::vector<char> membership(const Hypergraph3& h, const EdgeSubset& f) {
  std::vector<char> in_f(h.edges().size(), 0);
  for (std::size_t idx : f) {
    if (idx >= in_f.size()) throw Error(ErrorCode::kInvalidInput, "edge index out of range");
    in_f[idx] = 1;
  }
  return in_f;
}

}  // namespace

EdgeSubset neighborhood_E(const Hypergraph3& h, const EdgeSubset& f) {
  const std::vector<char> in_f = membership(h, f);
  const auto edges = h.edges();
  EdgeSubset out;
  for (std::size_t idx : f) {
    const Edge& e = edges[idx];
    for (const Triple& t : h.triples_containing(e)) {
      for (const Edge& other : t.edges()) {
        const std::size_t j = h.require_edge_index(other);
        if (!in_f[j]) out.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> neighborhood_T(const Hypergraph3& h, const EdgeSubset& f) {
  const std::vector<char> in_f = membership(h, f);
  const auto edges = h.edges();
  std::vector<Triple> out;
  for (std::size_t idx : f) {
    for (const Triple& t : h.triples_containing(edges[idx])) {
      bool all_in_f = true;
      for (const Edge& e : t.edges()) all_in_f = all_in_f && in_f[h.require_edge_index(e)];
      if (!all_in_f) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Element> covered_vertices(const Hypergraph3& h, const EdgeSubset& f) {
  membership(h, f);
  const auto edges = h.edges();
  std::vector<Element> out;
  for (std::size_t idx : f) {
    out.push_back(edges[idx].u);
    out.push_back(edges[idx].v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Element> neighborhood_V(const Hypergraph3& h, const EdgeSubset& f) {
  const std::vector<Element> covered = covered_vertices(h, f);
  const auto edges = h.edges();
  std::vector<Element> out;
  for (std::size_t idx : f) {
    const Edge& e = edges[idx];
    for (const Triple& t : h.triples_containing(e)) {
      for (Element w : {t.a, t.b, t.c}) {
        if (!std::binary_search(covered.begin(), covered.end(), w)) out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* to_string(ExpansionKind kind) {
  switch (kind) {
    case ExpansionKind::kEdge: return "E";
    case ExpansionKind::kTriple: return "T";
    case ExpansionKind::kVertex: return "V";
  }
  return "?";
}

ExpansionResult expansion_bruteforce(const Hypergraph3& h, ExpansionKind kind) {
  if (h.edge_count() > kMaxBruteForceEdges) {
    throw Error(ErrorCode::kSizeLimit, "brute-force expansion needs |E| <= 24, got " +
                                           std::to_string(h.edge_count()));
  }
  if (!h.materialized()) return expansion_bruteforce(Hypergraph3::build(h.sidon(), true), kind);

  const auto edges = h.edges();
  const auto triples = h.triples();
  const std::size_t m = edges.size();

  // Per-edge bitmasks: adjacent edges, endpoints, and third vertices.
  std::vector<std::uint32_t> adjacent(m, 0), ends(m, 0), thirds(m, 0);
  std::vector<std::uint32_t> triple_masks;
  for (const Triple& t : triples) {
    std::uint32_t mask = 0;
    for (const Edge& e : t.edges()) mask |= std::uint32_t{1} << h.require_edge_index(e);
    triple_masks.push_back(mask);
  }
  for (std::size_t i = 0; i < m; ++i) {
    ends[i] = (std::uint32_t{1} << edges[i].u) | (std::uint32_t{1} << edges[i].v);
    for (const Triple& t : h.triples_containing(edges[i])) {
      for (const Edge& e : t.edges()) {
        const std::size_t j = h.require_edge_index(e);
        if (j != i) adjacent[i] |= std::uint32_t{1} << j;
      }
      for (Element w : {t.a, t.b, t.c}) {
        if (w != edges[i].u && w != edges[i].v) thirds[i] |= std::uint32_t{1} << w;
      }
    }
  }

  ExpansionResult result;
  result.kind = kind;
  bool found = false;
  std::uint32_t best_mask = 0;
  std::int64_t best_num = 0, best_den = 1;
  const std::uint64_t n = h.vertex_count();
  const std::uint32_t limit = std::uint32_t{1} << m;

  for (std::uint32_t f = 1; f < limit; ++f) {
    const auto size = static_cast<std::int64_t>(std::popcount(f));
    std::int64_t num = 0, den = 0;
    if (kind == ExpansionKind::kVertex) {
      std::uint32_t covered = 0, reach = 0;
      for (std::uint32_t rest = f; rest != 0; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        covered |= ends[i];
        reach |= thirds[i];
      }
      den = std::popcount(covered);
      if (2 * static_cast<std::uint64_t>(den) > n) continue;
      num = std::popcount(reach & ~covered);
    } else {
      if (2 * static_cast<std::uint64_t>(size) > m) continue;
      den = size;
      if (kind == ExpansionKind::kEdge) {
        std::uint32_t reach = 0;
        for (std::uint32_t rest = f; rest != 0; rest &= rest - 1) reach |= adjacent[std::countr_zero(rest)];
        num = std::popcount(reach & ~f);
      } else {
        for (std::uint32_t tm : triple_masks) {
          const std::uint32_t hit = tm & f;
          num += (hit != 0 && hit != tm) ? 1 : 0;
        }
      }
    }
    ++result.subsets_examined;
    // Strictly better ratio, or equal ratio with fewer edges; masks ascend,
    // so the first of each size wins.
    const std::int64_t lhs = num * best_den;
    const std::int64_t rhs = best_num * den;
    if (!found || lhs < rhs ||
        (lhs == rhs && std::popcount(f) < std::popcount(best_mask))) {
      found = true;
      best_mask = f;
      best_num = num;
      best_den = den;
    }
  }
  if (!found) throw Error(ErrorCode::kInvalidInput, "no qualifying edge subset");
  result.ratio = Rational(best_num, best_den);
  for (std::size_t i = 0; i < m; ++i) {
    if (best_mask & (std::uint32_t{1} << i)) result.witness.push_back(i);
  }
  return result;
}

ExpansionCertificate expansion_certificate(const Hypergraph3& h) {
  return expansion_certificate(h, spectrum(CayleyGraph(h.dimension(), h.sidon().elements())));
}

ExpansionCertificate expansion_certificate(const Hypergraph3& h, const Spectrum& base) {
  ExpansionCertificate cert;
  cert.epsilon = base.epsilon();
  const Rational eps2 = cert.epsilon * cert.epsilon;
  cert.edge_bound = eps2 / Rational(128);
  cert.triple_bound = eps2 * Rational(static_cast<std::int64_t>(h.degree()), 64);
  return cert;
}

namespace {

enum Label : std::uint8_t { kNone = 0, kA = 1, kB = 2, kC = 3 };

std::vector<std::uint8_t> label_sets(const Hypergraph3& h, std::span<const Element> a,
                                     std::span<const Element> b, std::span<const Element> c) {
  std::vector<std::uint8_t> labels(h.vertex_count(), kNone);
  const std::array<std::pair<std::span<const Element>, Label>, 3> sets{
      {{a, kA}, {b, kB}, {c, kC}}};
  for (const auto& [set, label] : sets) {
    for (Element x : set) {
      check_element(x, h.dimension());
      if (labels[x] != kNone) {
        throw Error(ErrorCode::kInvalidInput,
                    "vertex sets must be pairwise disjoint (vertex " + std::to_string(x) + ")");
      }
      labels[x] = label;
    }
  }
  return labels;
}

}  // namespace

CrossingCount count_crossing_triples(const Hypergraph3& h, std::span<const Element> a,
                                     std::span<const Element> b, std::span<const Element> c) {
  return count_crossing_triples(h, spectrum(CayleyGraph(h.dimension(), h.sidon().elements())),
                                a, b, c);
}

CrossingCount count_crossing_triples(const Hypergraph3& h, const Spectrum& base,
                                     std::span<const Element> a, std::span<const Element> b,
                                     std::span<const Element> c) {
  const std::vector<std::uint8_t> labels = label_sets(h, a, b, c);
  const auto& s = h.sidon().elements();
  const std::uint64_t n = h.vertex_count();
  CrossingCount out;

  // Each triple lies in exactly one clique, and the crossing triples inside
  // C_x are the products of its A, B, C memberships.
  std::vector<std::uint32_t> in_c(n, 0);
  for (Element x = 0; x < n; ++x) {
    std::uint64_t counts[4] = {0, 0, 0, 0};
    for (Element g : s) ++counts[labels[x ^ g]];
    out.count += counts[kA] * counts[kB] * counts[kC];
    in_c[x] = static_cast<std::uint32_t>(counts[kC]);
  }

  // e(W, C): every A-B skeleton edge contributes both centres, each joined
  // in Cay(Z_2^t, S) to its clique members that fall in C.
  const auto& sums = h.pair_sums();
  for (Element x : a) {
    for (std::size_t p = 0; p < sums.size(); ++p) {
      if (labels[x ^ sums[p]] != kB) continue;
      const auto [i, j] = h.pair_generators(p);
      out.incidence_count += in_c[x ^ s[i]] + in_c[x ^ s[j]];
    }
  }

  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(h.degree());
  const double lambda = static_cast<double>(base.lambda());
  const double mu = boost::rational_cast<double>(base.mu());
  out.alpha = static_cast<double>(a.size()) / nd;
  out.beta = static_cast<double>(b.size()) / nd;
  out.gamma = static_cast<double>(c.size()) / nd;
  const double ab = out.alpha * out.beta;
  out.main_term = (d * d * d - d * d) * ab * out.gamma * nd;
  out.window = 2.0 * mu * d * std::sqrt(ab) * out.gamma * nd +
               lambda * d * d * std::sqrt(ab * out.gamma) * nd +
               lambda * std::sqrt(mu) * d * std::pow(ab, 0.25) * std::sqrt(out.gamma) * nd;
  out.count_within = std::abs(static_cast<double>(out.count) - out.main_term) <= out.window;
  out.incidence_within =
      std::abs(static_cast<double>(out.incidence_count) - out.main_term) <= out.window;
  out.relative_deviation =
      out.main_term == 0.0 ? 0.0 : (static_cast<double>(out.count) - out.main_term) / out.main_term;
  return out;
}

std::array<std::vector<Element>, 3> random_thirds(int t, std::uint64_t seed) {
  check_dimension(t);
  const std::uint64_t n = group_order(t);
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = n - 1; i > 0; --i) std::swap(order[i], order[bounded_draw(rng, i + 1)]);
  const std::uint64_t third = n / 3;
  std::array<std::vector<Element>, 3> parts{
      std::vector<Element>(order.begin(), order.begin() + third),
      std::vector<Element>(order.begin() + third, order.begin() + 2 * third),
      std::vector<Element>(order.begin() + 2 * third, order.end())};
  for (auto& part : parts) std::sort(part.begin(), part.end());
  return parts;
}

MultiSet center_multiset(const Hypergraph3& h, std::span<const Element> a,
                         std::span<const Element> b) {
  std::vector<std::uint8_t> in_a(h.vertex_count(), 0), in_b(h.vertex_count(), 0);
  for (Element x : a) {
    check_element(x, h.dimension());
    in_a[x] = 1;
  }
  for (Element x : b) {
    check_element(x, h.dimension());
    in_b[x] = 1;
  }
  const auto& s = h.sidon().elements();
  const auto& sums = h.pair_sums();
  MultiSet w;
  std::uint64_t edges = 0;
  for (Element x = 0; x < h.vertex_count(); ++x) {
    if (!in_a[x]) continue;
    for (std::size_t p = 0; p < sums.size(); ++p) {
      const Element y = x ^ sums[p];
      if (!in_b[y]) continue;
      // An edge with both ends in A and in B is reached from each end.
      if (in_b[x] && in_a[y] && y < x) continue;
      const auto [i, j] = h.pair_generators(p);
      w.add(x ^ s[i]);
      w.add(x ^ s[j]);
      ++edges;
    }
  }
  invariant(w.size() == 2 * edges, "|W| != 2 |E(A,B)|");
  return w;
}

}  // namespace hyperexp
