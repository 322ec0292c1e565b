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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperexp/cayley.hpp"
#include "hyperexp/cli.hpp"
#include "hyperexp/error.hpp"
#include "hyperexp/hypergraph.hpp"
#include "hyperexp/io.hpp"
#include "hyperexp/overlap.hpp"
#include "hyperexp/sidon.hpp"
#include "hyperexp/walks.hpp"

using namespace hyperexp;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::size_t components(const SparseGraph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::uint32_t w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }
  return count;
}

double exact_to_double(const ExactDistribution& p, std::size_t i) {
  return static_cast<double>(boost::multiprecision::cpp_rational(p.weights[i], p.denominator));
}

// ---------------------------------------------------------------- 1

Outcome flagship() {
  Outcome o;
  const SidonSet s(2, {1, 2, 3});
  const Spectrum spec = spectrum(CayleyGraph(2, s.elements()));
  o.require(spec.values() == std::vector<std::int64_t>{3, -1, -1, -1}, "spectrum");
  o.require(spec.epsilon() == Rational(2, 3), "epsilon");
  const Hypergraph3 h = Hypergraph3::build(s, true);
  o.require(h.triples().size() == 4 && h.edges().size() == 6, "|T| or |E|");
  const ExpansionResult he = expansion_bruteforce(h, ExpansionKind::kEdge);
  const ExpansionResult ht = expansion_bruteforce(h, ExpansionKind::kTriple);
  o.require(he.ratio == Rational(1) && ht.ratio == Rational(1), "h_E or h_T");
  const ExpansionCertificate cert = expansion_certificate(h);
  o.require(cert.edge_bound == Rational(1, 288) && cert.triple_bound == Rational(1, 48), "certificate");
  o.require(cert.edge_bound <= he.ratio && cert.triple_bound <= ht.ratio, "certificate exceeds h");

  // Octahedron: 4-regular on 6 vertices, non-neighbours form a perfect matching.
  const AuxGraph g = AuxGraph::build(h);
  bool octahedron = g.vertex_count() == 6 && g.measured_degree() == 4;
  std::set<std::pair<std::size_t, std::size_t>> missing;
  for (std::size_t e = 0; e < 6 && octahedron; ++e) {
    const auto nb = g.neighbors(e);
    for (std::size_t f = 0; f < 6; ++f) {
      if (f != e && std::find(nb.begin(), nb.end(), f) == nb.end()) missing.insert(std::minmax(e, f));
    }
  }
  octahedron = octahedron && missing.size() == 3;
  o.require(octahedron, "auxiliary graph is not the octahedron");
  const AuxSpectralBounds b = aux_spectral_bounds(g);
  o.require(b.ratio() == 0.5, "lambda_aux / degree");
  for (std::size_t start = 0; start < 6; ++start) {
    const MixingProfile p = mixing_profile(g, exact_point_distribution(6, start), 50, b);
    o.require(p.exact && p.within_envelope, "exact mixing envelope");
  }
  o.detail = o.passed ? "spectrum {3,-1,-1,-1}, eps 2/3, h_E = h_T = 1, aux ratio 1/2" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 2

Outcome cube() {
  Outcome o;
  const SidonSet s(3, {1, 2, 4});
  const CayleyGraph skeleton(3, pair_sums(s));
  o.require(spectrum(CayleyGraph(3, s.elements())).epsilon() == Rational(0), "epsilon");
  o.require(components(skeleton.to_sparse()) == 2, "skeleton components");
  const Hypergraph3 h = Hypergraph3::build(s, true);
  o.require(expansion_bruteforce(h, ExpansionKind::kEdge).ratio == Rational(0), "h_E");
  o.require(expansion_bruteforce(h, ExpansionKind::kTriple).ratio == Rational(0), "h_T");
  const AuxGraph g = AuxGraph::build(h);
  const ExactDistribution p = evolve(g, exact_point_distribution(12, 0), 80);
  const double limit = 1.0 / (2.0 * std::sqrt(3.0));
  const double dist = distance_to_uniform(p);
  o.require(std::abs(dist - limit) <= 1e-12, "limit distance");
  std::size_t support = 0;
  for (std::size_t i = 0; i < 12; ++i) support += p.weights[i] != 0 ? 1 : 0;
  o.require(support == 6, "walk left its component");
  if (o.passed) o.detail = "eps 0, 2 components, h_E = h_T = 0, distance " + format_double(dist);
  return o;
}

// ---------------------------------------------------------------- 3

Outcome square_relation() {
  Outcome o;
  std::size_t checked = 0;
  for (int m = 2; m <= 6; ++m) {
    o.require(verify_square_relation(gold_sidon(m)).ok(), "gold m=" + std::to_string(m));
    ++checked;
  }
  for (int t = 4; t <= 14; ++t) {
    const auto d = std::max<std::size_t>(3, static_cast<std::size_t>(std::cbrt(std::ldexp(1.0, t)) * 1.2));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SidonSet s = random_sidon(t, d, 1000 * static_cast<std::uint64_t>(t) + seed);
      o.require(verify_square_relation(s).ok(), "random t=" + std::to_string(t));
      ++checked;
    }
  }
  if (o.passed) o.detail = std::to_string(checked) + " sets, exact character-by-character equality";
  return o;
}

// ---------------------------------------------------------------- 4

bool regular(const Hypergraph3& h) {
  const std::size_t d = h.degree();
  const std::uint64_t n = h.vertex_count();
  if (h.edges().size() != n * d * (d - 1) / 4) return false;
  if (h.triples().size() != n * d * (d - 1) * (d - 2) / 6) return false;
  std::vector<std::uint64_t> vertex(n, 0);
  std::map<Edge, std::uint64_t> edge;
  for (const Triple& t : h.triples()) {
    for (Element x : {t.a, t.b, t.c}) ++vertex[x];
    for (const Edge& e : t.edges()) ++edge[e];
  }
  const std::uint64_t vdeg = 3 * (d * (d - 1) * (d - 2) / 6);
  if (!std::all_of(vertex.begin(), vertex.end(), [&](std::uint64_t v) { return v == vdeg; })) return false;
  if (edge.size() != h.edges().size()) return false;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      const auto it = edge.find(Edge{x, y});
      const std::uint64_t c = it == edge.end() ? 0 : it->second;
      if (c != 0 && c != 2 * d - 4) return false;
    }
  }
  return true;
}

Outcome degree_regularity() {
  Outcome o;
  std::vector<SidonSet> sets{SidonSet(2, {1, 2, 3}), SidonSet(3, {1, 2, 4}), gold_sidon(2), gold_sidon(3)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    sets.push_back(random_sidon(4 + static_cast<int>(seed % 3), 3 + seed % 3, seed));
  }
  for (const SidonSet& s : sets) o.require(regular(Hypergraph3::build(s, true)), "irregular build");
  const Hypergraph3 gold = Hypergraph3::build(gold_sidon(3), true);
  o.require(gold.vertex_count() == 64 && gold.degree() == 7 && gold.edges().size() == 672 &&
                gold.triples().size() == 2240,
            "gold_sidon(3) sizes");
  if (o.passed) o.detail = std::to_string(sets.size()) + " builds; gold_sidon(3): n=64 d=7 |E|=672 |T|=2240";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome mixing_envelope() {
  Outcome o;
  const SidonSet s = gold_sidon(3);
  o.require(spectrum(CayleyGraph(s.dimension(), s.elements())).epsilon() > Rational(0), "epsilon = 0");
  const Hypergraph3 h = Hypergraph3::build(s, true);
  const AuxGraph g = AuxGraph::build(h);
  const AuxSpectralBounds b = aux_spectral_bounds(g, EigenMethod::kDense);
  double worst = -1.0;
  for (std::size_t k = 0; k < 10; ++k) {
    const std::size_t start = k * g.vertex_count() / 10;
    const MixingProfile p = mixing_profile(g, point_distribution(g.vertex_count(), start), 50, b, 1e-9);
    o.require(p.within_envelope, "envelope violated from edge " + std::to_string(start));
    for (std::size_t i = 1; i <= 50; ++i) worst = std::max(worst, p.distance[i] - p.envelope[i]);
  }
  if (o.passed) {
    o.detail = "lambda_aux/D = " + format_double(b.lambda_aux) + "/" + std::to_string(b.degree) +
               ", max(distance - envelope) = " + format_double(worst);
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome count_window() {
  Outcome o;
  const Hypergraph3 h = Hypergraph3::build(gold_sidon(6), false);
  const SidonSet& s = h.sidon();
  const Spectrum base = spectrum(CayleyGraph(s.dimension(), s.elements()));
  bool all_count = true, all_incidence = true;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto parts = random_thirds(h.dimension(), k);
    const CrossingCount c = count_crossing_triples(h, base, parts[0], parts[1], parts[2]);
    all_count = all_count && c.count_within;
    all_incidence = all_incidence && c.incidence_within;
    if (std::abs(c.relative_deviation) > std::abs(worst)) worst = c.relative_deviation;
  }
  o.require(all_count || all_incidence, "neither convention inside the window for all partitions");
  o.detail = std::string("unordered ") + (all_count ? "inside" : "outside") + ", incidence " +
             (all_incidence ? "inside" : "outside") + ", largest relative deviation " + format_double(worst);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t instances = 0, subsets = 0;
  for (std::uint64_t seed = 0; instances < 50; ++seed) {
    const int t = 3 + static_cast<int>(seed % 4);
    const std::size_t d = 3 + seed % 4;
    SidonSet s(2, {1, 2, 3});
    try {
      s = random_sidon(t, d, seed);
    } catch (const AttemptsExhausted&) {
      continue;
    }
    ++instances;
    const Hypergraph3 h = Hypergraph3::build(s, true);
    const auto triples = h.triples();
    const std::uint64_t n = h.vertex_count();

    // Crossing counts against a full scan of T.
    std::vector<int> label(n);
    for (auto& l : label) l = static_cast<int>(rng() % 4);  // 3 = in none
    std::array<std::vector<Element>, 3> parts;
    for (Element x = 0; x < n; ++x) {
      if (label[x] < 3) parts[label[x]].push_back(x);
    }
    std::uint64_t scan = 0;
    for (const Triple& tr : triples) {
      std::array<int, 3> l{label[tr.a], label[tr.b], label[tr.c]};
      std::sort(l.begin(), l.end());
      scan += (l == std::array<int, 3>{0, 1, 2}) ? 1 : 0;
    }
    o.require(count_crossing_triples(h, parts[0], parts[1], parts[2]).count == scan,
              "crossing count, instance " + std::to_string(instances));

    // Neighbourhoods against definitions applied to T.
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::size_t> idx;
      const std::uint64_t density = 1 + rng() % 4;
      for (std::size_t i = 0; i < h.edges().size(); ++i) {
        if (rng() % 8 < density) idx.push_back(i);
      }
      const EdgeSubset f = make_edge_subset(h, idx);
      std::set<Edge> fe;
      std::set<Element> vf;
      for (std::size_t i : idx) {
        fe.insert(h.edges()[i]);
        vf.insert(h.edges()[i].u);
        vf.insert(h.edges()[i].v);
      }
      std::set<Edge> ne;
      std::set<std::array<Element, 3>> nt;
      std::set<Element> nv;
      for (const Triple& tr : triples) {
        const auto es = tr.edges();
        const int in = static_cast<int>(fe.count(es[0]) + fe.count(es[1]) + fe.count(es[2]));
        if (in == 0) continue;
        for (const Edge& e : es) {
          if (!fe.count(e)) ne.insert(e);
        }
        if (in < 3) nt.insert({tr.a, tr.b, tr.c});
        for (const Edge& e : es) {
          if (!fe.count(e)) continue;
          for (Element x : {tr.a, tr.b, tr.c}) {
            if (x != e.u && x != e.v && !vf.count(x)) nv.insert(x);
          }
        }
      }
      std::set<Edge> got_e;
      for (std::size_t i : neighborhood_E(h, f)) got_e.insert(h.edges()[i]);
      std::set<std::array<Element, 3>> got_t;
      for (const Triple& tr : neighborhood_T(h, f)) got_t.insert({tr.a, tr.b, tr.c});
      const auto v = neighborhood_V(h, f);
      o.require(got_e == ne, "N_E");
      o.require(got_t == nt, "N_T");
      o.require(std::set<Element>(v.begin(), v.end()) == nv, "N_V");
      ++subsets;
    }
  }
  if (o.passed) {
    o.detail = std::to_string(instances) + " instances, " + std::to_string(subsets) + " edge subsets";
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome expander_mixing() {
  Outcome o;
  std::mt19937_64 rng(88);
  double min_slack = INFINITY;
  for (int k = 0; k < 10; ++k) {
    const int t = 4 + k % 5;
    const Element n = static_cast<Element>(group_order(t));
    std::set<Element> gens;
    const std::size_t d = 2 + rng() % (n / 2);
    while (gens.size() < d) gens.insert(static_cast<Element>(1 + rng() % (n - 1)));
    const CayleyGraph g(t, std::vector<Element>(gens.begin(), gens.end()));
    const Spectrum spec = spectrum(g);
    for (int pair = 0; pair < 1000; ++pair) {
      MultiSet v, w;
      const std::size_t sv = 1 + rng() % n, sw = 1 + rng() % n;
      for (std::size_t i = 0; i < sv; ++i) v.add(static_cast<Element>(rng() % n), 1 + rng() % 3);
      for (std::size_t i = 0; i < sw; ++i) w.add(static_cast<Element>(rng() % n), 1 + rng() % 3);
      const MixingLemmaReport r = mixing_lemma_check(g, spec, v, w);
      o.require(r.holds, "mixing lemma, graph " + std::to_string(k));
      min_slack = std::min(min_slack, r.slack);
    }
  }
  if (o.passed) o.detail = "10 graphs x 1000 pairs, min slack " + format_double(min_slack);
  return o;
}

// ---------------------------------------------------------------- 9

Outcome overlap() {
  Outcome o;
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::int64_t> coord(0, 1'000'000);
  std::vector<Point> pos(30);
  for (Point& p : pos) p = {coord(rng), coord(rng)};
  const auto tri = complete_triangles(30);
  const OverlapReport r = overlap_estimate(pos, tri, CandidateStrategy::vertex_centroids(), 4);
  const OverlapReport g = overlap_estimate(pos, tri, CandidateStrategy::grid(64), 4);
  const Rational best = std::max(r.fraction, g.fraction);
  o.require(best >= Rational(1, 5), "best fraction below 0.2");
  o.require(covered_count(pos, tri, r.best_point_scaled) == r.covered, "recount");
  o.detail = "best fraction " + format_rational(best) + " = " +
             format_double(boost::rational_cast<double>(best));
  return o;
}

// ---------------------------------------------------------------- 10

std::string run_cli(std::vector<std::string> args, const std::string& data) {
  std::ostringstream out, err;
  args.insert(args.end(), {"--omit-wall-clock", "--out", data});
  const int code = cli::run(args, out, err);
  std::string bytes = "exit " + std::to_string(code) + "\n" + out.str();
  std::error_code ec;
  if (std::filesystem::exists(data, ec)) {
    bytes += read_file(data);
    std::filesystem::remove(data);
  }
  return bytes;
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "hyperexp_acceptance";
  std::filesystem::create_directories(dir);
  const std::string data = (dir / "data").string();
  const std::vector<std::vector<std::string>> commands{
      {"generate", "--t", "10", "--random-d", "8", "--seed", "3"},
      {"generate", "--t", "10", "--random-d", "8", "--seed", "3", "--format", "csv"},
      {"spectrum", "--gold-m", "4", "--pairs"},
      {"build", "--gold-m", "3", "--materialize", "--format", "csv"},
      {"verify", "--gold-m", "3"},
      {"walk", "--gold-m", "3", "--steps", "30", "--format", "csv"},
      {"walk", "--t", "2", "--random-d", "3", "--exact", "--steps", "20"},
      {"walk", "--gold-m", "4", "--monte-carlo", "--trials", "20000", "--steps", "25", "--seed", "9"},
      {"count", "--gold-m", "5", "--split", "thirds", "--partitions", "5", "--seed", "4"},
      {"expansion", "--set-file", "", "--kind", "all"},
      {"overlap", "--t", "6", "--random-d", "5", "--seed", "1", "--centroids", "--embed-seed", "2"},
  };
  const std::string set_file = (dir / "set.txt").string();
  write_file(set_file, "t=3\n1\n2\n3\n4\n");
  std::size_t compared = 0;
  for (std::vector<std::string> base : commands) {
    for (auto& a : base) {
      if (a.empty()) a = set_file;
    }
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "1", "4"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--workers", workers});
      outputs.push_back(run_cli(args, data));
    }
    o.require(outputs[0].rfind("exit 0", 0) == 0, base[0] + " exited nonzero");
    o.require(outputs[0] == outputs[1], base[0] + " differs between runs");
    o.require(outputs[0] == outputs[2], base[0] + " differs between worker counts");
    ++compared;
  }
  std::filesystem::remove_all(dir);
  if (o.passed) o.detail = std::to_string(compared) + " commands byte-identical over 2 runs and 1 vs 4 workers";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "flagship exactness", 1, flagship},
      {2, "cube counterexample", 1, cube},
      {3, "square relation", 10, square_relation},
      {4, "degree regularity", 60, degree_regularity},
      {5, "mixing envelope", 30, mixing_envelope},
      {6, "crossing-count window", 60, count_window},
      {7, "brute-force oracles", 60, oracles},
      {8, "expander mixing lemma", 60, expander_mixing},
      {9, "overlap estimator", 20, overlap},
      {10, "determinism", 120, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.passed && secs > c.budget_seconds) {
      o.passed = false;
      o.detail += " (over the " + format_double(c.budget_seconds) + " s budget)";
    }
    failures += o.passed ? 0 : 1;
    std::printf("criterion %2d %-24s %s  %.2fs  %s\n", c.id, c.name, o.passed ? "PASS" : "FAIL", secs,
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
