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

#include "hyperexp/cayley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperexp/error.hpp"
#include "hyperexp/random.hpp"

namespace hyperexp {

using boost::multiprecision::cpp_int;

void walsh_hadamard(std::span<std::int64_t> values) {
  const std::size_t n = values.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::kInvalidInput, "transform length must be a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t a = values[i];
        const std::int64_t b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

CayleyGraph::CayleyGraph(int t, std::vector<Element> generators)
    : t_(t), generators_(std::move(generators)) {
  check_dimension(t_);
  for (Element s : generators_) {
    check_element(s, t_);
    if (s == 0) throw Error(ErrorCode::kInvalidInput, "generator 0 would create loops");
  }
  sorted_ = generators_;
  std::sort(sorted_.begin(), sorted_.end());
  if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end()) {
    throw Error(ErrorCode::kInvalidInput, "generators must be distinct");
  }
}

bool CayleyGraph::adjacent(Element x, Element y) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), x ^ y);
}

SparseGraph CayleyGraph::to_sparse() const {
  if (t_ > 20) throw Error(ErrorCode::kSizeLimit, "explicit adjacency limited to t <= 20");
  std::vector<std::vector<std::uint32_t>> adj(vertex_count());
  for (Element x = 0; x < vertex_count(); ++x) {
    adj[x].reserve(generators_.size());
    for (Element s : generators_) adj[x].push_back(x ^ s);
  }
  return SparseGraph(adj);
}

Spectrum::Spectrum(int t, std::vector<std::int64_t> values)
    : t_(t), values_(std::move(values)) {
  if (values_.size() != group_order(t_)) {
    throw Error(ErrorCode::kInvalidInput, "spectrum length must be 2^t");
  }
  for (std::size_t chi = 1; chi < values_.size(); ++chi) {
    lambda_ = std::max(lambda_, std::abs(values_[chi]));
  }
}

Rational Spectrum::epsilon() const {
  if (degree() == 0) throw Error(ErrorCode::kInvalidInput, "epsilon undefined for degree 0");
  return Rational(1) - Rational(lambda_, degree());
}

Rational Spectrum::mu() const {
  return Rational(lambda_ * lambda_ + degree(), 2);
}

std::int64_t Spectrum::second_largest() const {
  if (values_.size() < 2) throw Error(ErrorCode::kInvalidInput, "no second eigenvalue");
  // The trivial character carries the top value d; drop one copy of it.
  return *std::max_element(values_.begin() + 1, values_.end());
}

std::vector<std::pair<std::int64_t, std::uint64_t>> Spectrum::histogram() const {
  std::map<std::int64_t, std::uint64_t, std::greater<>> counts;
  for (std::int64_t v : values_) ++counts[v];
  return {counts.begin(), counts.end()};
}

Spectrum spectrum(const CayleyGraph& g) {
  std::vector<std::int64_t> values(g.vertex_count(), 0);
  for (Element s : g.generators()) values[s] = 1;
  walsh_hadamard(values);
  return Spectrum(g.dimension(), std::move(values));
}

namespace {

std::vector<Element> distinct_pair_sums(std::span<const Element> s) {
  std::vector<Element> sums;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if ((s[i] ^ s[j]) != 0) sums.push_back(s[i] ^ s[j]);
    }
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

}  // namespace

SquareRelationCheck verify_square_relation(int t, std::span<const Element> s) {
  const Spectrum base = spectrum(CayleyGraph(t, {s.begin(), s.end()}));
  const Spectrum skeleton = spectrum(CayleyGraph(t, distinct_pair_sums(s)));
  const auto d = static_cast<std::int64_t>(s.size());

  std::vector<std::int64_t> expected(base.values().size());
  SquareRelationCheck check;
  for (std::size_t chi = 0; chi < expected.size(); ++chi) {
    const std::int64_t l = base.values()[chi];
    expected[chi] = (l * l - d) / 2;
    if (!check.first_mismatch && expected[chi] != skeleton.values()[chi]) {
      check.first_mismatch = SquareRelationMismatch{static_cast<Element>(chi), expected[chi],
                                                    skeleton.values()[chi]};
    }
  }
  std::vector<std::int64_t> actual = skeleton.values();
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  check.multiset_equal = expected == actual;
  return check;
}

SquareRelationCheck verify_square_relation(const SidonSet& s) {
  return verify_square_relation(s.dimension(), s.elements());
}

void MultiSet::add(Element x, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  entries_[x] += multiplicity;
  size_ += multiplicity;
}

std::uint64_t MultiSet::multiplicity(Element x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t MultiSet::sum_of_squares() const {
  std::uint64_t total = 0;
  for (const auto& [x, m] : entries_) total += m * m;
  return total;
}

MixingLemmaReport mixing_lemma_check(const CayleyGraph& g, const MultiSet& v,
                                     const MultiSet& w) {
  return mixing_lemma_check(g, spectrum(g), v, w);
}

MixingLemmaReport mixing_lemma_check(const CayleyGraph& g, const Spectrum& spec,
                                     const MultiSet& v, const MultiSet& w) {
  const Element mask = dimension_mask(g.dimension());
  for (const MultiSet* m : {&v, &w}) {
    for (const auto& [x, mult] : m->entries()) {
      if ((x & ~mask) != 0) throw Error(ErrorCode::kInvalidInput, "multiset element outside Z_2^t");
    }
  }
  MixingLemmaReport report;
  for (const auto& [x, vx] : v.entries()) {
    for (Element s : g.generators()) report.e_vw += vx * w.multiplicity(x ^ s);
  }

  const cpp_int n = g.vertex_count();
  const cpp_int d = g.degree();
  const cpp_int lambda = spec.lambda();
  const cpp_int size_v = v.size();
  const cpp_int size_w = w.size();
  // Scale both sides by n: |n e - d|V||W|| <= lambda sqrt(P Q), P = n sum v^2 - |V|^2.
  const cpp_int lhs = n * cpp_int(report.e_vw) - d * size_v * size_w;
  const cpp_int p = n * cpp_int(v.sum_of_squares()) - size_v * size_v;
  const cpp_int q = n * cpp_int(w.sum_of_squares()) - size_w * size_w;
  report.holds = lhs * lhs <= lambda * lambda * p * q;

  const double nd = static_cast<double>(g.vertex_count());
  report.expected = static_cast<double>(g.degree()) * static_cast<double>(v.size()) *
                    static_cast<double>(w.size()) / nd;
  report.deviation = std::abs(static_cast<double>(lhs)) / nd;
  report.bound = static_cast<double>(spec.lambda()) *
                 std::sqrt(static_cast<double>(p) * static_cast<double>(q)) / nd;
  report.slack = report.bound - report.deviation;
  return report;
}

DeCaenReport decaen_check(std::span<const std::uint64_t> degrees, std::uint64_t n,
                          std::uint64_t m) {
  if (degrees.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "degree sequence length differs from n");
  }
  cpp_int sum = 0;
  cpp_int squares = 0;
  for (std::uint64_t d : degrees) {
    sum += d;
    squares += cpp_int(d) * d;
  }
  if (sum != cpp_int(2) * m) {
    throw Error(ErrorCode::kInvalidInput, "degrees do not sum to 2m");
  }
  DeCaenReport report;
  report.sum_of_squares = static_cast<std::uint64_t>(squares);
  if (n <= 1) {
    report.bound = 0.0;
    report.holds = squares == 0;
    return report;
  }
  // (n-1) sum d^2 <= m (2m + (n-2)(n-1))
  const cpp_int rhs = cpp_int(m) * (cpp_int(2) * m + cpp_int(n - 2) * (n - 1));
  report.holds = cpp_int(n - 1) * squares <= rhs;
  report.bound = static_cast<double>(rhs) / static_cast<double>(n - 1);
  return report;
}

namespace {

std::uint64_t crossing_edges(const SparseGraph& g, const std::vector<char>& in_u) {
  std::uint64_t count = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!in_u[v]) continue;
    for (std::uint32_t w : g.neighbors(v)) count += in_u[w] ? 0 : 1;
  }
  return count;
}

struct Expansion {
  Rational h;
  bool exact;
};

Expansion edge_expansion(const SparseGraph& g, std::uint64_t seed, std::size_t samples) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "edge expansion needs at least two vertices");
  std::optional<Rational> best;
  auto consider = [&](std::uint64_t cut, std::size_t size) {
    Rational r(static_cast<std::int64_t>(cut), static_cast<std::int64_t>(size));
    if (!best || r < *best) best = r;
  };

  if (n <= kExactCheegerVertices) {
    std::vector<std::uint32_t> masks(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::uint32_t w : g.neighbors(v)) masks[v] |= std::uint32_t{1} << w;
    }
    const std::uint32_t full = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t u = 1; u <= full && u != 0; ++u) {
      const auto size = static_cast<std::size_t>(std::popcount(u));
      if (2 * size > n) continue;
      std::uint64_t cut = 0;
      for (std::uint32_t rest = u; rest != 0; rest &= rest - 1) {
        cut += static_cast<std::uint64_t>(std::popcount(masks[std::countr_zero(rest)] & ~u));
      }
      consider(cut, size);
    }
    return {*best, true};
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> order(n);
  std::vector<char> in_u(n, 0);
  for (std::size_t sample = 0; sample < samples; ++sample) {
    const std::size_t size = 1 + bounded_draw(rng, n / 2);
    if (sample % 2 == 0) {
      std::iota(order.begin(), order.end(), 0u);
      for (std::size_t i = 0; i < size; ++i) {
        std::swap(order[i], order[i + bounded_draw(rng, n - i)]);
      }
    } else {
      // Breadth-first prefix from a random root: connected, low-boundary sets.
      std::fill(in_u.begin(), in_u.end(), 0);
      std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(bounded_draw(rng, n))};
      in_u[queue.front()] = 1;
      std::size_t filled = 0;
      while (!queue.empty() && filled < size) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        order[filled++] = v;
        for (std::uint32_t w : g.neighbors(v)) {
          if (!in_u[w]) {
            in_u[w] = 1;
            queue.push_back(w);
          }
        }
      }
      if (filled < size) continue;
    }
    std::fill(in_u.begin(), in_u.end(), 0);
    for (std::size_t i = 0; i < size; ++i) in_u[order[i]] = 1;
    consider(crossing_edges(g, in_u), size);
  }
  return {*best, false};
}

CheegerReport finish_cheeger(std::size_t degree, double lambda2, Expansion e) {
  CheegerReport report;
  report.degree = degree;
  report.lambda2 = lambda2;
  report.h = e.h;
  report.h_exact = e.exact;
  const double h = boost::rational_cast<double>(e.h);
  const double dd = static_cast<double>(degree);
  report.bound = dd - h * h / (2.0 * dd);
  return report;
}

}  // namespace

CheegerReport cheeger_check(const SparseGraph& g, std::uint64_t seed, std::size_t samples) {
  const long degree = g.regular_degree();
  if (degree <= 0) throw Error(ErrorCode::kInvalidInput, "Cheeger check requires a regular graph");
  double lambda2 = 0.0;
  if (g.vertex_count() <= 4096) {
    lambda2 = dense_spectrum(g)[1];
  } else {
    lambda2 = power_extreme_eigenvalues(g).second.estimate;
  }
  CheegerReport report =
      finish_cheeger(static_cast<std::size_t>(degree), lambda2, edge_expansion(g, seed, samples));
  if (report.h_exact) report.holds = report.lambda2 <= report.bound + 1e-9;
  return report;
}

CheegerReport cheeger_check(const CayleyGraph& g, std::uint64_t seed, std::size_t samples) {
  if (g.degree() == 0) throw Error(ErrorCode::kInvalidInput, "Cheeger check requires degree >= 1");
  const std::int64_t lambda2 = spectrum(g).second_largest();
  CheegerReport report = finish_cheeger(g.degree(), static_cast<double>(lambda2),
                                        edge_expansion(g.to_sparse(), seed, samples));
  if (report.h_exact) {
    // lambda2 * 2 D b^2 <= 2 D^2 b^2 - a^2 with h = a / b.
    const std::int64_t a = report.h.numerator();
    const std::int64_t b = report.h.denominator();
    const auto dd = static_cast<std::int64_t>(g.degree());
    report.holds = lambda2 * 2 * dd * b * b <= 2 * dd * dd * b * b - a * a;
  }
  return report;
}

}  // namespace hyperexp
