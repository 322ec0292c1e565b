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


#include "hyperexp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <set>

#include "CLI11.hpp"

#include "hyperexp/cayley.hpp"
#include "hyperexp/error.hpp"
#include "hyperexp/hypergraph.hpp"
#include "hyperexp/io.hpp"
#include "hyperexp/overlap.hpp"
#include "hyperexp/sidon.hpp"
#include "hyperexp/walks.hpp"

namespace hyperexp::cli {

namespace {

// Largest dimension for which commands compute full spectra on the side.
constexpr int kDerivedSpectrumMaxT = 24;
// verify materializes H only up to this many triples.
constexpr std::uint64_t kVerifyMaterializeTriples = 4'000'000;
constexpr int kVerifyCheegerMaxT = 16;
constexpr std::size_t kImplicitSampleVertices = 64;

struct CheckFailed {};

class Manifest {
 public:
  Manifest(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

  void check(const std::string& name, bool hard, bool passed, Json detail = nullptr) {
    if (!names_.insert(name).second) throw std::logic_error("check '" + name + "' recorded twice");
    Json c;
    c["name"] = name;
    c["kind"] = hard ? "hard" : "report";
    c["passed"] = passed;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks_.push_back(std::move(c));
    if (hard && !passed) hard_failure_ = true;
  }

  void derive(const SidonSet& s) {
    derived_["t"] = s.dimension();
    derived_["d"] = s.size();
    derived_["n"] = group_order(s.dimension());
    if (s.dimension() <= kDerivedSpectrumMaxT) {
      const Spectrum spec = spectrum(CayleyGraph(s.dimension(), s.elements()));
      derived_["lambda"] = spec.lambda();
      derived_["epsilon"] = format_rational(spec.epsilon());
    } else {
      derived_["lambda"] = nullptr;
      derived_["epsilon"] = nullptr;
    }
  }

  Json& result() { return result_; }
  bool hard_failure() const noexcept { return hard_failure_; }

  Json finish(std::optional<double> elapsed) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command_;
    j["version"] = kVersion;
    j["config"] = config_;
    if (elapsed) j["wall_clock"] = {{"elapsed_seconds", *elapsed}};
    j["derived"] = derived_.is_null() ? Json::object() : derived_;
    j["checks"] = checks_;
    j["result"] = result_.is_null() ? Json::object() : result_;
    return j;
  }

 private:
  std::string command_;
  Json config_;
  Json derived_;
  Json checks_ = Json::array();
  Json result_;
  std::set<std::string> names_;
  bool hard_failure_ = false;
};

struct Common {
  int t = 0;
  std::size_t random_d = 0;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 0;
  int gold_m = 0;
  std::string set_file;
  std::string out;
  std::string manifest;
  std::string format = "json";
  bool omit_wall_clock = false;
  std::size_t workers = 1;

  CLI::Option* t_opt = nullptr;
  CLI::Option* random_opt = nullptr;
  CLI::Option* gold_opt = nullptr;
  CLI::Option* file_opt = nullptr;

  void attach(CLI::App* app) {
    t_opt = app->add_option("--t", t, "Dimension of Z_2^t");
    random_opt = app->add_option("--random-d", random_d, "Random Sidon set of this size (needs --t)");
    app->add_option("--seed", seed, "Seed for every random choice");
    app->add_option("--max-attempts", max_attempts, "Rejection budget for --random-d (0: 1000 d)");
    gold_opt = app->add_option("--gold-m", gold_m, "Gold set {(x, x^3)} over GF(2^m)");
    file_opt = app->add_option("--set-file", set_file, "Set file (JSON or text)");
    app->add_option("--out", out, "Write the data export here");
    app->add_option("--manifest", manifest, "Write the manifest here instead of stdout");
    app->add_option("--format", format, "Data export format")->check(CLI::IsMember({"json", "csv"}));
    app->add_flag("--omit-wall-clock", omit_wall_clock, "Leave the timing field out of the manifest");
    app->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  }

  Json config() const {
    Json j;
    if (random_opt->count()) {
      j["source"] = "random";
      j["t"] = t;
      j["random_d"] = random_d;
      j["max_attempts"] = max_attempts;
    } else if (gold_opt->count()) {
      j["source"] = "gold";
      j["gold_m"] = gold_m;
    } else if (file_opt->count()) {
      j["source"] = "file";
      j["set_file"] = set_file;
    }
    j["seed"] = seed;
    j["format"] = format;
    return j;
  }

  RawSet resolve() const {
    const int sources = static_cast<int>(random_opt->count() > 0) +
                        static_cast<int>(gold_opt->count() > 0) +
                        static_cast<int>(file_opt->count() > 0);
    if (sources != 1) {
      throw Error(ErrorCode::kInvalidInput,
                  "exactly one of --random-d, --gold-m, --set-file is required");
    }
    RawSet raw;
    if (random_opt->count()) {
      if (!t_opt->count()) throw Error(ErrorCode::kInvalidInput, "--random-d needs --t");
      const SidonSet s = random_sidon(t, random_d, seed, max_attempts);
      raw = {s.dimension(), s.elements()};
    } else if (gold_opt->count()) {
      const SidonSet s = gold_sidon(gold_m);
      raw = {s.dimension(), s.elements()};
    } else {
      raw = read_set_file(set_file);
    }
    if (t_opt->count() && raw.t != t) {
      throw Error(ErrorCode::kInvalidInput, "--t " + std::to_string(t) +
                                                " disagrees with the source dimension " +
                                                std::to_string(raw.t));
    }
    return raw;
  }
};

SidonSet require_sidon(Manifest& m, const RawSet& raw) {
  const SidonCheck check = verify_sidon(raw.t, raw.elements);
  Json detail;
  if (check.violation) {
    const auto& v = *check.violation;
    detail["violation"] = {v.s1, v.s2, v.s1p, v.s2p};
  }
  if (!check.ok()) detail["message"] = check.detail;
  m.check("sidon", true, check.ok(), detail);
  if (!check.ok()) throw CheckFailed{};
  SidonSet s(raw.t, raw.elements);
  m.derive(s);
  return s;
}

void export_data(const Common& c, const std::string& json_text, const std::string& csv_text) {
  if (c.out.empty()) return;
  write_file(c.out, c.format == "csv" ? csv_text : json_text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- generate

void cmd_generate(const Common& c, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  m.result() = sidon_to_json(s);
  export_data(c, dump(m.result()), sidon_to_text(s));
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  bool pairs = false;
};

void cmd_spectrum(const Common& c, const SpectrumOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  const CayleyGraph g(s.dimension(), o.pairs ? pair_sums(s) : s.elements());
  const Spectrum spec = spectrum(g);
  __int128 sum_sq = 0;
  for (std::int64_t v : spec.values()) sum_sq += static_cast<__int128>(v) * v;
  const __int128 expected = static_cast<__int128>(g.vertex_count()) * g.degree();
  m.check("parseval", true, sum_sq == expected);
  const SquareRelationCheck sq = verify_square_relation(s);
  Json detail;
  if (sq.first_mismatch) {
    detail["chi"] = sq.first_mismatch->chi;
    detail["expected"] = sq.first_mismatch->expected;
    detail["actual"] = sq.first_mismatch->actual;
  }
  m.check("square_relation", true, sq.ok(), detail);
  m.result() = spectrum_to_json(spec);
  m.result()["generators"] = o.pairs ? "pair_sums" : "sidon";
  std::string csv = "value,multiplicity\n";
  for (const auto& [value, mult] : spec.histogram()) {
    csv += std::to_string(value) + "," + std::to_string(mult) + "\n";
  }
  export_data(c, dump(m.result()), csv);
}

// ------------------------------------------------------------------ checks

// Recounts every degree from the materialized lists.
bool degree_regularity(const Hypergraph3& h, Json& detail) {
  const std::size_t d = h.degree();
  const std::uint64_t c3 = d * (d - 1) * (d - 2) / 6;
  std::vector<std::uint64_t> vertex_degree(h.vertex_count(), 0);
  std::vector<std::uint64_t> pair_degree(h.edges().size(), 0);
  for (const Triple& t : h.triples()) {
    ++vertex_degree[t.a];
    ++vertex_degree[t.b];
    ++vertex_degree[t.c];
    for (const Edge& e : t.edges()) ++pair_degree[h.require_edge_index(e)];
  }
  const bool vertices_ok = std::all_of(vertex_degree.begin(), vertex_degree.end(),
                                       [&](std::uint64_t x) { return x == 3 * c3; });
  const bool pairs_ok = std::all_of(pair_degree.begin(), pair_degree.end(),
                                    [&](std::uint64_t x) { return x == h.pair_degree(); });
  const bool counts_ok = h.edges().size() == h.edge_count() && h.triples().size() == h.triple_count();
  detail["mode"] = "materialized";
  detail["vertex_degree"] = 3 * c3;
  detail["pair_degree"] = h.pair_degree();
  detail["edges"] = h.edges().size();
  detail["triples"] = h.triples().size();
  return vertices_ok && pairs_ok && counts_ok;
}

std::vector<Edge> sample_edges(const Hypergraph3& h) {
  std::vector<Edge> out;
  const std::uint64_t limit = std::min<std::uint64_t>(h.vertex_count(), kImplicitSampleVertices);
  for (Element x = 0; x < limit; ++x) {
    for (Element s : h.pair_sums()) out.push_back(Edge::of(x, x ^ s));
  }
  return out;
}

bool implicit_regularity(const Hypergraph3& h, Json& detail) {
  bool ok = true;
  const auto edges = sample_edges(h);
  for (const Edge& e : edges) ok = ok && h.is_edge(e.u, e.v) && h.triples_containing(e).size() == h.pair_degree();
  detail["mode"] = "implicit";
  detail["edges_sampled"] = edges.size();
  detail["pair_degree"] = h.pair_degree();
  return ok;
}

bool two_centers(const Hypergraph3& h, std::span<const Edge> edges, std::span<const Triple> triples) {
  std::vector<bool> in_s(h.vertex_count(), false);
  for (Element s : h.sidon().elements()) in_s[s] = true;
  for (const Edge& e : edges) {
    const auto [x, y] = h.edge_cliques(e);
    if (x == y) return false;
    for (Element c : {x, y}) {
      if (!in_s[c ^ e.u] || !in_s[c ^ e.v]) return false;
    }
  }
  for (const Triple& t : triples) {
    std::size_t centers = 0;
    Element found = 0;
    for (Element s : h.sidon().elements()) {
      const Element x = t.a ^ s;
      if (in_s[x ^ t.b] && in_s[x ^ t.c]) {
        ++centers;
        found = x;
      }
    }
    if (centers != 1 || found != t.center) return false;
  }
  return true;
}

Json bounds_json(const AuxSpectralBounds& b) {
  Json j;
  j["lambda2"] = b.lambda2;
  j["lambda_n"] = b.lambda_n;
  j["lambda_aux"] = b.lambda_aux;
  j["degree"] = b.degree;
  j["ratio"] = b.ratio();
  j["method"] = b.dense ? "dense" : "power";
  if (!b.dense) {
    j["lambda2_bracket"] = {b.second.lower, b.second.upper};
    j["lambda_n_bracket"] = {b.smallest.lower, b.smallest.upper};
  }
  return j;
}

// ------------------------------------------------------------------- build

struct BuildOptions {
  bool materialize = false;
};

void cmd_build(const Common& c, const BuildOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  if (c.format == "csv" && !o.materialize) {
    throw Error(ErrorCode::kInvalidInput, "--format csv (triple dump) needs --materialize");
  }
  const Hypergraph3 h = Hypergraph3::build(s, o.materialize);
  Json detail;
  const bool regular = o.materialize ? degree_regularity(h, detail) : implicit_regularity(h, detail);
  m.check("degree_regularity", true, regular, detail);
  const auto sampled = o.materialize ? std::vector<Edge>() : sample_edges(h);
  m.check("two_centers", true,
          o.materialize ? two_centers(h, h.edges(), h.triples()) : two_centers(h, sampled, {}));
  m.result() = hypergraph_summary(h, expansion_certificate(h));
  export_data(c, dump(m.result()), o.materialize ? triples_csv(h) : std::string());
}

// ------------------------------------------------------------------ verify

void cmd_verify(const Common& c, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  const int t = s.dimension();
  Json& result = m.result();

  std::optional<Spectrum> base;
  if (t <= kDerivedSpectrumMaxT) {
    base = spectrum(CayleyGraph(t, s.elements()));
    const SquareRelationCheck sq = verify_square_relation(s);
    m.check("square_relation", true, sq.ok());
  }

  if (s.size() < 3) throw Error(ErrorCode::kInvalidInput, "hypergraph needs |S| >= 3");
  const bool materialize = Hypergraph3::build(s, false).triple_count() <= kVerifyMaterializeTriples;
  const Hypergraph3 h = Hypergraph3::build(s, materialize);

  Json detail;
  const bool regular = materialize ? degree_regularity(h, detail) : implicit_regularity(h, detail);
  m.check("degree_regularity", true, regular, detail);
  const auto sampled = materialize ? std::vector<Edge>() : sample_edges(h);
  m.check("two_centers", true,
          materialize ? two_centers(h, h.edges(), h.triples()) : two_centers(h, sampled, {}));

  if (base) {
    const ExpansionCertificate cert = expansion_certificate(h, *base);
    result["summary"] = hypergraph_summary(h, cert);
    m.check("expansion_certificate", false, true,
            {{"epsilon", format_rational(cert.epsilon)},
             {"edge_bound", format_rational(cert.edge_bound)},
             {"triple_bound", format_rational(cert.triple_bound)},
             {"vacuous", cert.epsilon == Rational(0)}});

    if (h.edge_count() <= kMaxBruteForceEdges) {
      const ExpansionResult he = expansion_bruteforce(h, ExpansionKind::kEdge);
      const ExpansionResult ht = expansion_bruteforce(h, ExpansionKind::kTriple);
      const ExpansionResult hv = expansion_bruteforce(h, ExpansionKind::kVertex);
      m.check("edge_expansion_bound", true, he.ratio >= cert.edge_bound,
              {{"h_E", format_rational(he.ratio)}, {"bound", format_rational(cert.edge_bound)}});
      m.check("triple_expansion_bound", true, ht.ratio >= cert.triple_bound,
              {{"h_T", format_rational(ht.ratio)}, {"bound", format_rational(cert.triple_bound)}});
      m.check("vertex_expansion", false, true, {{"h_V", format_rational(hv.ratio)}});
      result["expansion"] = {expansion_to_json(h, he), expansion_to_json(h, ht),
                             expansion_to_json(h, hv)};
    }

    if (t <= kVerifyCheegerMaxT) {
      const CheegerReport ch = cheeger_check(CayleyGraph(t, pair_sums(s)), c.seed);
      Json cd{{"lambda2", ch.lambda2}, {"h", format_rational(ch.h)}, {"h_exact", ch.h_exact},
              {"bound", ch.bound}};
      if (ch.holds) {
        m.check("cheeger_skeleton", true, *ch.holds, cd);
      } else {
        m.check("cheeger_skeleton", false, true, cd);
      }
    }

    const auto parts = random_thirds(t, c.seed);
    const CrossingCount cc = count_crossing_triples(h, *base, parts[0], parts[1], parts[2]);
    m.check("triple_count_window", false, cc.count_within || cc.incidence_within, crossing_to_json(cc));
  }

  if (materialize && h.edge_count() <= kDenseAuxLimit) {
    const AuxGraph g = AuxGraph::build(h);
    const AuxSpectralBounds bounds = aux_spectral_bounds(g);
    const bool exact = g.vertex_count() <= kExactEvolutionMaxEdges;
    const MixingProfile profile =
        exact ? mixing_profile(g, exact_point_distribution(g.vertex_count(), 0), 50, bounds)
              : mixing_profile(g, point_distribution(g.vertex_count(), 0), 50, bounds);
    m.check("mixing_envelope", true, profile.within_envelope && profile.contracts_stepwise,
            {{"exact", exact}, {"steps", 50}, {"ratio", bounds.ratio()}});
    const RapidMixingReport rm = rapid_mixing_check(h);
    m.check("rapid_mixing", true, rm.epsilon == Rational(0) || rm.lambda_aux_ratio < 1.0,
            rapid_mixing_to_json(rm));
    m.check("aux_degree", false, rm.measured_degree == rm.stated_degree,
            {{"measured", rm.measured_degree}, {"stated", rm.stated_degree}});
    result["aux_bounds"] = bounds_json(bounds);
  }
  export_data(c, dump(result), std::string());
}

// -------------------------------------------------------------------- walk

struct WalkOptions {
  std::size_t steps = 50;
  std::size_t start = 0;
  bool exact = false;
  bool monte_carlo = false;
  std::size_t trials = 10000;
  int bucket_bits = -1;
};

void cmd_walk(const Common& c, const WalkOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  if (o.monte_carlo) {
    const Hypergraph3 h = Hypergraph3::build(s, false);
    MonteCarloOptions mc;
    mc.seed = c.seed;
    mc.steps = o.steps;
    mc.trials = o.trials;
    mc.workers = c.workers;
    mc.bucket_bits = o.bucket_bits;
    const WalkHistogram hist = monte_carlo_walk(h, mc);
    m.result() = histogram_to_json(hist);
    std::string csv = "bucket,count\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      csv += std::to_string(b) + "," + std::to_string(hist.counts[b]) + "\n";
    }
    export_data(c, dump(m.result()), csv);
    return;
  }
  const Hypergraph3 h = Hypergraph3::build(s, true);
  const AuxGraph g = AuxGraph::build(h);
  const AuxSpectralBounds bounds = aux_spectral_bounds(g);
  const MixingProfile profile =
      o.exact ? mixing_profile(g, exact_point_distribution(g.vertex_count(), o.start), o.steps, bounds)
              : mixing_profile(g, point_distribution(g.vertex_count(), o.start), o.steps, bounds);
  m.check("mixing_envelope", true, profile.within_envelope,
          profile.first_violation ? Json{{"first_violation", *profile.first_violation}} : Json());
  m.check("stepwise_contraction", true, profile.contracts_stepwise);
  m.check("aux_degree", false, g.measured_degree() == g.stated_degree(),
          {{"measured", g.measured_degree()}, {"stated", g.stated_degree()}});
  Json& r = m.result();
  r["bounds"] = bounds_json(bounds);
  r["exact"] = profile.exact;
  r["start_edge"] = o.start;
  r["l2_distance"] = profile.distance;
  r["envelope"] = profile.envelope;
  export_data(c, dump(r), mixing_csv(profile));
}

// ------------------------------------------------------------------- count

struct CountOptions {
  std::string split = "thirds";
  std::size_t partitions = 1;
};

void cmd_count(const Common& c, const CountOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  if (s.dimension() > kDerivedSpectrumMaxT) throw Error(ErrorCode::kSizeLimit, "count supports t <= 24");
  const Hypergraph3 h = Hypergraph3::build(s, false);
  const Spectrum base = spectrum(CayleyGraph(s.dimension(), s.elements()));
  Json rows = Json::array();
  std::string csv =
      "partition,count,incidence_count,main_term,window,count_within,incidence_within,"
      "relative_deviation\n";
  bool count_all = true, incidence_all = true;
  for (std::size_t k = 0; k < o.partitions; ++k) {
    const auto parts = random_thirds(s.dimension(), c.seed + k);
    const CrossingCount cc = count_crossing_triples(h, base, parts[0], parts[1], parts[2]);
    count_all = count_all && cc.count_within;
    incidence_all = incidence_all && cc.incidence_within;
    Json row = crossing_to_json(cc);
    row["partition_seed"] = c.seed + k;
    rows.push_back(row);
    csv += std::to_string(k) + "," + std::to_string(cc.count) + "," +
           std::to_string(cc.incidence_count) + "," + format_double(cc.main_term) + "," +
           format_double(cc.window) + "," + (cc.count_within ? "true" : "false") + "," +
           (cc.incidence_within ? "true" : "false") + "," + format_double(cc.relative_deviation) +
           "\n";
  }
  m.check("window_unordered_count", false, count_all);
  m.check("window_incidence_count", false, incidence_all);
  m.result()["partitions"] = rows;
  export_data(c, dump(m.result()), csv);
}

// --------------------------------------------------------------- expansion

struct ExpansionOptions {
  std::string kind = "all";
};

void cmd_expansion(const Common& c, const ExpansionOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  const Hypergraph3 probe = Hypergraph3::build(s, false);
  if (probe.edge_count() > kMaxBruteForceEdges) {
    throw Error(ErrorCode::kSizeLimit, "brute-force expansion needs |E| <= 24");
  }
  const Hypergraph3 h = Hypergraph3::build(s, true);
  const ExpansionCertificate cert = expansion_certificate(h);
  Json results = Json::array();
  std::string csv = "kind,ratio,witness_size,subsets_examined\n";
  for (const auto& [name, kind] : {std::pair{"E", ExpansionKind::kEdge},
                                   std::pair{"T", ExpansionKind::kTriple},
                                   std::pair{"V", ExpansionKind::kVertex}}) {
    if (o.kind != "all" && o.kind != name) continue;
    const ExpansionResult r = expansion_bruteforce(h, kind);
    results.push_back(expansion_to_json(h, r));
    csv += std::string(name) + "," + format_rational(r.ratio) + "," + std::to_string(r.witness.size()) +
           "," + std::to_string(r.subsets_examined) + "\n";
    if (kind == ExpansionKind::kEdge) {
      m.check("edge_expansion_bound", true, r.ratio >= cert.edge_bound,
              {{"h_E", format_rational(r.ratio)}, {"bound", format_rational(cert.edge_bound)}});
    } else if (kind == ExpansionKind::kTriple) {
      m.check("triple_expansion_bound", true, r.ratio >= cert.triple_bound,
              {{"h_T", format_rational(r.ratio)}, {"bound", format_rational(cert.triple_bound)}});
    } else {
      m.check("vertex_expansion", false, true, {{"h_V", format_rational(r.ratio)}});
    }
  }
  m.result()["summary"] = hypergraph_summary(h, cert);
  m.result()["expansion"] = results;
  export_data(c, dump(m.result()), csv);
}

// ----------------------------------------------------------------- overlap

struct OverlapOptions {
  std::size_t grid = 0;
  std::size_t random_candidates = 0;
  std::uint64_t candidate_seed = 0;
  bool centroids = false;
  std::string embedding;
  std::uint64_t embed_seed = 0;
};

void cmd_overlap(const Common& c, const OverlapOptions& o, Manifest& m) {
  const SidonSet s = require_sidon(m, c.resolve());
  const Hypergraph3 h = Hypergraph3::build(s, true);
  const Embedding emb = o.embedding.empty() ? random_embedding(s.dimension(), o.embed_seed)
                                            : parse_embedding_csv(read_file(o.embedding), s.dimension());
  const auto triangles = hypergraph_triangles(h);
  std::vector<Point> candidates;
  auto extend = [&](const CandidateStrategy& strategy) {
    const auto more = candidate_points(emb.positions(), triangles, strategy);
    candidates.insert(candidates.end(), more.begin(), more.end());
  };
  if (o.grid > 0) extend(CandidateStrategy::grid(o.grid));
  if (o.random_candidates > 0) extend(CandidateStrategy::random(o.candidate_seed, o.random_candidates));
  if (o.centroids || candidates.empty()) extend(CandidateStrategy::vertex_centroids());
  const OverlapReport report = overlap_estimate(emb.positions(), triangles, candidates, c.workers);
  const std::uint64_t recount = covered_count(emb.positions(), triangles, report.best_point_scaled);
  m.check("overlap_recount", true, recount == report.covered);
  m.check("overlap_fraction_range", true,
          report.fraction >= Rational(0) && report.fraction <= Rational(1));
  m.result() = overlap_to_json(report);
  const std::string csv = "best_x,best_y,covered,total,fraction,candidates_examined\n" +
                          format_double(report.best_x) + "," + format_double(report.best_y) + "," +
                          std::to_string(report.covered) + "," + std::to_string(report.total) + "," +
                          format_rational(report.fraction) + "," +
                          std::to_string(report.candidates_examined) + "\n";
  export_data(c, dump(m.result()), csv);
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kAttemptsExhausted ? kExitCheckFailed : kExitConfigError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse 3-uniform hypergraph expanders from Sidon sets", "hyperexp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::array<Common, 8> common;
  struct Entry {
    const char* name;
    const char* help;
    CLI::App* app = nullptr;
  };
  std::array<Entry, 8> entries{{{"generate", "Generate and verify a Sidon set"},
                                {"spectrum", "Exact Cayley spectrum"},
                                {"build", "Build the hypergraph and check its degrees"},
                                {"verify", "Run the full check suite"},
                                {"walk", "Edge random walk: mixing profile or Monte Carlo"},
                                {"count", "Crossing-triple counts for random thirds"},
                                {"expansion", "Brute-force expansion ratios"},
                                {"overlap", "Empirical geometric overlap"}}};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].app = app.add_subcommand(entries[i].name, entries[i].help);
    common[i].attach(entries[i].app);
  }

  SpectrumOptions spectrum_opts;
  entries[1].app->add_flag("--pairs", spectrum_opts.pairs, "Spectrum of Cay(Z_2^t, S') instead");
  BuildOptions build_opts;
  entries[2].app->add_flag("--materialize", build_opts.materialize, "Enumerate E and T");
  WalkOptions walk_opts;
  CLI::App* walk = entries[4].app;
  walk->add_option("--steps", walk_opts.steps, "Walk length");
  walk->add_option("--start", walk_opts.start, "Start edge index");
  walk->add_flag("--exact", walk_opts.exact, "Exact rational evolution");
  walk->add_flag("--monte-carlo", walk_opts.monte_carlo, "Sample walks on the implicit hypergraph");
  walk->add_option("--trials", walk_opts.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  walk->add_option("--bucket-bits", walk_opts.bucket_bits, "Histogram resolution per pair sum");
  CountOptions count_opts;
  entries[5].app->add_option("--split", count_opts.split, "Partition scheme")
      ->check(CLI::IsMember({"thirds"}));
  entries[5].app->add_option("--partitions", count_opts.partitions, "Number of seeded partitions")
      ->check(CLI::PositiveNumber);
  ExpansionOptions expansion_opts;
  entries[6].app->add_option("--kind", expansion_opts.kind, "E, T, V or all")
      ->check(CLI::IsMember({"E", "T", "V", "all"}));
  OverlapOptions overlap_opts;
  CLI::App* ov = entries[7].app;
  ov->add_option("--grid", overlap_opts.grid, "k x k grid over the bounding box");
  ov->add_option("--random-candidates", overlap_opts.random_candidates, "k random candidates");
  ov->add_option("--candidate-seed", overlap_opts.candidate_seed, "Seed for random candidates");
  ov->add_flag("--centroids", overlap_opts.centroids, "Vertex positions and triple centroids");
  ov->add_option("--embedding", overlap_opts.embedding, "CSV vertex,x,y");
  ov->add_option("--embed-seed", overlap_opts.embed_seed, "Seed for a random embedding");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  std::size_t which = 0;
  while (!entries[which].app->parsed()) ++which;
  const Common& c = common[which];

  Json config = c.config();
  switch (which) {
    case 1: config["pairs"] = spectrum_opts.pairs; break;
    case 2: config["materialize"] = build_opts.materialize; break;
    case 4:
      config["steps"] = walk_opts.steps;
      config["start"] = walk_opts.start;
      config["exact"] = walk_opts.exact;
      config["monte_carlo"] = walk_opts.monte_carlo;
      config["trials"] = walk_opts.trials;
      config["bucket_bits"] = walk_opts.bucket_bits;
      break;
    case 5:
      config["split"] = count_opts.split;
      config["partitions"] = count_opts.partitions;
      break;
    case 6: config["kind"] = expansion_opts.kind; break;
    case 7:
      config["grid"] = overlap_opts.grid;
      config["random_candidates"] = overlap_opts.random_candidates;
      config["candidate_seed"] = overlap_opts.candidate_seed;
      config["centroids"] = overlap_opts.centroids;
      config["embedding"] = overlap_opts.embedding;
      config["embed_seed"] = overlap_opts.embed_seed;
      break;
    default: break;
  }
  Manifest manifest(entries[which].name, config);

  const auto started = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    switch (which) {
      case 0: cmd_generate(c, manifest); break;
      case 1: cmd_spectrum(c, spectrum_opts, manifest); break;
      case 2: cmd_build(c, build_opts, manifest); break;
      case 3: cmd_verify(c, manifest); break;
      case 4: cmd_walk(c, walk_opts, manifest); break;
      case 5: cmd_count(c, count_opts, manifest); break;
      case 6: cmd_expansion(c, expansion_opts, manifest); break;
      case 7: cmd_overlap(c, overlap_opts, manifest); break;
      default: break;
    }
  } catch (const CheckFailed&) {
    code = kExitCheckFailed;
  } catch (const AttemptsExhausted& e) {
    manifest.check("random_sidon", true, false, {{"reached", e.reached()}, {"target", e.target()}});
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    code = kExitCheckFailed;
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  if (manifest.hard_failure()) code = kExitCheckFailed;

  std::optional<double> elapsed;
  if (!c.omit_wall_clock) {
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  const std::string text = dump(manifest.finish(elapsed));
  try {
    if (c.manifest.empty()) {
      out << text;
    } else {
      write_file(c.manifest, text);
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitConfigError;
  }
  return code;
}

}  // namespace hyperexp::cli
