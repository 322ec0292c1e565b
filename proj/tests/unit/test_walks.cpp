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


#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "hyperexp/error.hpp"
#include "hyperexp/walks.hpp"

using namespace hyperexp;

namespace {

std::set<Edge> edge_set(const std::vector<Edge>& v) { return {v.begin(), v.end()}; }

// e ~ f iff e and f are two edges of one triple.
std::vector<std::set<std::size_t>> oracle_adjacency(const Hypergraph3& h) {
  std::vector<std::set<std::size_t>> adj(h.edges().size());
  for (const Triple& t : h.triples()) {
    const auto es = t.edges();
    for (const Edge& a : es) {
      for (const Edge& b : es) {
        if (!(a == b)) adj[h.require_edge_index(a)].insert(h.require_edge_index(b));
      }
    }
  }
  return adj;
}

std::vector<SidonSet> instances() {
  std::vector<SidonSet> out{SidonSet(2, {1, 2, 3}), SidonSet(3, {1, 2, 4}), SidonSet(3, {1, 2, 3, 4})};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    out.push_back(random_sidon(4 + static_cast<int>(seed % 3), 3 + seed % 3, seed));
  }
  return out;
}

}  // namespace

TEST_CASE("neighbour examples") {
  const Hypergraph3 cube = Hypergraph3::build(SidonSet(3, {1, 2, 4}), false);
  const auto n1 = neighbors(cube, Edge::of(1, 2));
  CHECK(n1.size() == 4);
  CHECK(edge_set(n1) == std::set<Edge>{Edge::of(1, 4), Edge::of(2, 4), Edge::of(1, 7), Edge::of(2, 7)});

  const Hypergraph3 k4 = Hypergraph3::build(SidonSet(2, {1, 2, 3}), false);
  const auto n2 = neighbors(k4, Edge::of(0, 1));
  CHECK(edge_set(n2) == std::set<Edge>{Edge::of(0, 2), Edge::of(1, 2), Edge::of(0, 3), Edge::of(1, 3)});
  CHECK(n2.size() == 4);
}

TEST_CASE("auxiliary graph structure") {
  for (const SidonSet& s : instances()) {
    const Hypergraph3 h = Hypergraph3::build(s, true);
    const AuxGraph g = AuxGraph::build(h);
    const std::size_t d = s.size();
    CHECK(g.measured_degree() == 2 * (2 * d - 4));
    CHECK(g.stated_degree() == 2 * d - 4);
    const auto oracle = oracle_adjacency(h);
    for (std::size_t e = 0; e < g.vertex_count(); ++e) {
      const auto nb = g.neighbors(e);
      CHECK(std::set<std::size_t>(nb.begin(), nb.end()) == oracle[e]);
      CHECK(g.triple_triangles_through(e) == 2 * d - 4);
      CHECK(g.triangles_through(e) >= g.triple_triangles_through(e));
    }
  }
  CHECK_THROWS_AS(AuxGraph::build(Hypergraph3::build(SidonSet(2, {1, 2, 3}), false)), Error);
}

TEST_CASE("every auxiliary edge lies in exactly one triple triangle") {
  for (const SidonSet& s : instances()) {
    const Hypergraph3 h = Hypergraph3::build(s, true);
    const AuxGraph g = AuxGraph::build(h);
    const auto adj = oracle_adjacency(h);
    for (std::size_t e = 0; e < adj.size(); ++e) {
      for (std::size_t f : adj[e]) {
        int count = 0;
        for (std::size_t x : adj[e]) {
          if (x == f || !adj[f].count(x)) continue;
          std::set<Element> v;
          for (std::size_t i : {e, f, x}) {
            v.insert(h.edges()[i].u);
            v.insert(h.edges()[i].v);
          }
          count += v.size() == 3 ? 1 : 0;
        }
        CHECK(count == 1);
      }
    }
  }
}

TEST_CASE("octahedron triangle counts") {
  const Hypergraph3 k4 = Hypergraph3::build(SidonSet(2, {1, 2, 3}), true);
  const AuxGraph g = AuxGraph::build(k4);
  for (std::size_t e = 0; e < 6; ++e) {
    CHECK(g.triple_triangles_through(e) == 2);
    CHECK(g.triangles_through(e) == 4);
  }
}

TEST_CASE("auxiliary spectra") {
  const AuxGraph oct = AuxGraph::build(Hypergraph3::build(SidonSet(2, {1, 2, 3}), true));
  const std::vector<double> values = dense_spectrum(oct.graph());
  const std::vector<double> expected{4, 0, 0, 0, -2, -2};
  for (std::size_t i = 0; i < 6; ++i) CHECK(values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  const AuxSpectralBounds b = aux_spectral_bounds(oct);
  CHECK(b.lambda2 == 0.0);
  CHECK(b.lambda_n == -2.0);
  CHECK(b.lambda_aux == 2.0);
  CHECK(b.ratio() == 0.5);

  const AuxGraph cube = AuxGraph::build(Hypergraph3::build(SidonSet(3, {1, 2, 4}), true));
  const AuxSpectralBounds cb = aux_spectral_bounds(cube);
  CHECK(cb.lambda2 == 4.0);
  CHECK(cb.ratio() == 1.0);
}

TEST_CASE("power iteration agrees with the dense solve") {
  const AuxGraph g = AuxGraph::build(Hypergraph3::build(gold_sidon(3), true));
  const AuxSpectralBounds dense = aux_spectral_bounds(g, EigenMethod::kDense);
  const AuxSpectralBounds power = aux_spectral_bounds(g, EigenMethod::kPower);
  CHECK(dense.lambda2 == 16.0);
  CHECK(dense.lambda_n == -4.0);
  CHECK_FALSE(power.dense);
  CHECK(power.second.lower <= dense.lambda2 + 1e-6);
  CHECK(power.second.upper >= dense.lambda2 - 1e-6);
  CHECK(power.lambda2 == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(power.lambda_n == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(power.second.iterations > 0);

  // K_5: spectrum {4, -1 x 4}.
  std::vector<std::vector<std::uint32_t>> adj(5);
  for (std::uint32_t a = 0; a < 5; ++a) {
    for (std::uint32_t b = 0; b < 5; ++b) {
      if (a != b) adj[a].push_back(b);
    }
  }
  const ExtremeEigenvalues k5 = power_extreme_eigenvalues(SparseGraph(adj));
  CHECK(k5.second.estimate == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(k5.smallest.estimate == doctest::Approx(-1.0).epsilon(1e-8));

  PowerIterationOptions tight;
  tight.max_iterations = 2;
  CHECK_THROWS_AS(power_extreme_eigenvalues(g.graph(), tight), Error);
}

TEST_CASE("evolution basics") {
  const AuxGraph g = AuxGraph::build(Hypergraph3::build(SidonSet(3, {1, 2, 4}), true));
  const EdgeDistribution u = uniform_distribution(12);
  const EdgeDistribution u5 = evolve(g, u, 5);
  for (double x : u5) CHECK(x == doctest::Approx(1.0 / 12));
  const EdgeDistribution p = point_distribution(12, 3);
  CHECK(evolve(g, p, 0) == p);

  const ExactDistribution eu = evolve(g, exact_uniform_distribution(12), 7);
  CHECK(distance_to_uniform(eu) == 0.0);
  const ExactDistribution ep = exact_point_distribution(12, 3);
  CHECK(evolve(g, ep, 0).weights == ep.weights);

  CHECK_THROWS_AS(evolve(g, EdgeDistribution(12, 0.1), 1), Error);
  CHECK_THROWS_AS(evolve(g, EdgeDistribution(5, 0.2), 1), Error);
  EdgeDistribution negative = point_distribution(12, 0);
  negative[0] = 1.5;
  negative[1] = -0.5;
  CHECK_THROWS_AS(evolve(g, negative, 1), Error);
  CHECK_THROWS_AS(point_distribution(12, 12), Error);
}

TEST_CASE("cube walk stays in its component and settles at 1/(2 sqrt 3)") {
  const Hypergraph3 h = Hypergraph3::build(SidonSet(3, {1, 2, 4}), true);
  const AuxGraph g = AuxGraph::build(h);
  const Edge start = h.edges()[0];
  const std::array<Element, 2> centres = h.edge_cliques(start);
  std::set<std::size_t> component;
  for (std::size_t i = 0; i < h.edges().size(); ++i) {
    // The two K4 components of the skeleton are the cosets of <3, 5>.
    const Edge& e = h.edges()[i];
    if (std::popcount(e.u ^ start.u) % 2 == 0) component.insert(i);
  }
  CHECK(component.size() == 6);
  (void)centres;

  const ExactDistribution p = evolve(g, exact_point_distribution(12, 0), 60);
  for (std::size_t i = 0; i < 12; ++i) {
    if (!component.count(i)) CHECK(p.weights[i] == 0);
  }
  const EdgeDistribution q = evolve(g, point_distribution(12, 0), 60);
  CHECK(distance_to_uniform(p) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(distance_to_uniform(q) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("exact and floating evolution agree") {
  const AuxGraph g = AuxGraph::build(Hypergraph3::build(random_sidon(5, 4, 2), true));
  const ExactDistribution e = evolve(g, exact_point_distribution(g.vertex_count(), 5), 12);
  const EdgeDistribution f = evolve(g, point_distribution(g.vertex_count(), 5), 12);
  BigInt total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    total += e.weights[i];
    const double exact = static_cast<double>(boost::multiprecision::cpp_rational(e.weights[i], e.denominator));
    CHECK(f[i] == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(total == e.denominator);
}

TEST_CASE("mixing profiles respect the envelope") {
  const AuxGraph oct = AuxGraph::build(Hypergraph3::build(SidonSet(2, {1, 2, 3}), true));
  const AuxSpectralBounds b = aux_spectral_bounds(oct);
  const MixingProfile zero = mixing_profile(oct, exact_uniform_distribution(6), 10, b);
  for (double x : zero.distance) CHECK(x == 0.0);
  for (std::size_t start = 0; start < 6; ++start) {
    const MixingProfile p = mixing_profile(oct, exact_point_distribution(6, start), 40, b);
    CHECK(p.exact);
    CHECK(p.within_envelope);
    CHECK(p.contracts_stepwise);
    CHECK_FALSE(p.first_violation.has_value());
    for (std::size_t i = 0; i <= 40; ++i) CHECK(p.envelope[i] == std::ldexp(1.0, -static_cast<int>(i)));
  }

  const AuxGraph gold = AuxGraph::build(Hypergraph3::build(gold_sidon(3), true));
  const AuxSpectralBounds gb = aux_spectral_bounds(gold);
  for (std::size_t start = 0; start < 672; start += 67) {
    const MixingProfile p = mixing_profile(gold, point_distribution(672, start), 50, gb);
    CHECK(p.within_envelope);
    CHECK(p.contracts_stepwise);
  }
}

TEST_CASE("an understated spectral bound is caught") {
  const AuxGraph oct = AuxGraph::build(Hypergraph3::build(SidonSet(2, {1, 2, 3}), true));
  AuxSpectralBounds wrong = aux_spectral_bounds(oct);
  wrong.lambda_aux = 1.0;
  const MixingProfile exact = mixing_profile(oct, exact_point_distribution(6, 0), 10, wrong);
  CHECK_FALSE(exact.within_envelope);
  CHECK(exact.first_violation == 1u);
  const MixingProfile floating = mixing_profile(oct, point_distribution(6, 0), 10, wrong);
  CHECK_FALSE(floating.within_envelope);
  CHECK_FALSE(floating.contracts_stepwise);
}

TEST_CASE("Monte Carlo on the flagship is uniform") {
  const Hypergraph3 h = Hypergraph3::build(SidonSet(2, {1, 2, 3}), false);
  MonteCarloOptions o;
  o.seed = 2026;
  o.steps = 50;
  o.trials = 60000;
  const WalkHistogram w = monte_carlo_walk(h, o);
  REQUIRE(w.counts.size() == 6);
  const double se = std::sqrt((1.0 / 6) * (5.0 / 6) / 60000.0);
  for (std::uint64_t c : w.counts) CHECK(std::abs(static_cast<double>(c) / 60000.0 - 1.0 / 6) <= 3 * se);
  CHECK(w.tv_estimate >= 0.0);
  CHECK(w.tv_stderr > 0.0);
}

TEST_CASE("Monte Carlo is deterministic across worker counts") {
  const Hypergraph3 h = Hypergraph3::build(gold_sidon(3), false);
  MonteCarloOptions o;
  o.seed = 7;
  o.steps = 9;
  o.trials = 5000;
  const WalkHistogram one = monte_carlo_walk(h, o);
  o.workers = 4;
  const WalkHistogram four = monte_carlo_walk(h, o);
  o.workers = 3;
  const WalkHistogram three = monte_carlo_walk(h, o);
  CHECK(one.counts == four.counts);
  CHECK(one.counts == three.counts);
  CHECK(one.tv_estimate == four.tv_estimate);
  std::uint64_t total = 0;
  for (std::uint64_t c : one.counts) total += c;
  CHECK(total == 5000);
  o.seed = 8;
  CHECK(monte_carlo_walk(h, o).counts != one.counts);
}

TEST_CASE("bucket map is a bijection at full resolution") {
  for (const SidonSet& s : instances()) {
    const Hypergraph3 h = Hypergraph3::build(s, true);
    std::set<std::size_t> seen;
    for (const Edge& e : h.edges()) {
      const std::size_t b = walk_bucket(h, e, s.dimension() - 1);
      CHECK(b < h.edges().size());
      seen.insert(b);
    }
    CHECK(seen.size() == h.edges().size());
  }
}

TEST_CASE("implicit walks follow the exact transition law") {
  for (const SidonSet& s : {SidonSet(3, {1, 2, 4}), SidonSet(3, {1, 2, 3, 4}), gold_sidon(2)}) {
    const Hypergraph3 h = Hypergraph3::build(s, true);
    const AuxGraph g = AuxGraph::build(h);
    const int bits = s.dimension() - 1;
    for (std::size_t steps : {1u, 2u, 5u}) {
      MonteCarloOptions o;
      o.seed = 100 + steps;
      o.steps = steps;
      o.trials = 40000;
      o.bucket_bits = bits;
      o.start = h.edges()[1];
      const WalkHistogram w = monte_carlo_walk(h, o);
      const EdgeDistribution p = evolve(g, point_distribution(g.vertex_count(), 1), steps);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double freq = static_cast<double>(w.counts[walk_bucket(h, h.edges()[i], bits)]) / 40000.0;
        const double se = std::sqrt(std::max(p[i] * (1 - p[i]), 1e-9) / 40000.0);
        CHECK(std::abs(freq - p[i]) <= 5 * se);
        if (p[i] == 0.0) CHECK(freq == 0.0);
      }
    }
  }
}

TEST_CASE("Monte Carlo validation") {
  const Hypergraph3 h = Hypergraph3::build(SidonSet(3, {1, 2, 4}), false);
  MonteCarloOptions o;
  o.trials = 0;
  CHECK_THROWS_AS(monte_carlo_walk(h, o), Error);
  o.trials = 10;
  o.bucket_bits = 3;
  CHECK_THROWS_AS(monte_carlo_walk(h, o), Error);
  o.bucket_bits = -1;
  o.start = Edge::of(0, 1);
  CHECK_THROWS_AS(monte_carlo_walk(h, o), Error);
}

TEST_CASE("rapid mixing reports") {
  const RapidMixingReport k4 = rapid_mixing_check(Hypergraph3::build(SidonSet(2, {1, 2, 3}), true));
  CHECK(k4.lambda_aux_ratio == 0.5);
  CHECK(k4.certified);
  CHECK(k4.measured_degree == 4);
  CHECK(k4.stated_degree == 2);
  REQUIRE(k4.omega_constant);
  CHECK(*k4.omega_constant == doctest::Approx(0.5 / std::pow(2.0 / 3.0, 4)));

  const RapidMixingReport cube = rapid_mixing_check(Hypergraph3::build(SidonSet(3, {1, 2, 4}), true));
  CHECK(cube.epsilon == Rational(0));
  CHECK(cube.lambda_aux_ratio == 1.0);
  CHECK_FALSE(cube.certified);
  CHECK_FALSE(cube.omega_constant);

  for (const SidonSet& s : instances()) {
    const RapidMixingReport r = rapid_mixing_check(Hypergraph3::build(s, true), 30);
    CHECK(r.alpha_observed <= r.lambda_aux_ratio + 1e-9);
    if (r.epsilon > Rational(0)) CHECK(r.lambda_aux_ratio < 1.0);
  }
  CHECK_THROWS_AS(rapid_mixing_check(Hypergraph3::build(SidonSet(2, {1, 2, 3}), false)), Error);
}
