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


#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperexp/cayley.hpp"
#include "hyperexp/cli.hpp"
#include "hyperexp/error.hpp"
#include "hyperexp/hypergraph.hpp"
#include "hyperexp/io.hpp"
#include "hyperexp/overlap.hpp"
#include "hyperexp/sidon.hpp"
#include "hyperexp/walks.hpp"

namespace py = pybind11;
using namespace hyperexp;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.numerator(), r.denominator());
}

py::tuple edge_tuple(const Edge& e) { return py::make_tuple(e.u, e.v); }

py::tuple triple_tuple(const Triple& t) { return py::make_tuple(t.a, t.b, t.c, t.center); }

py::dict crossing_dict(const CrossingCount& c) {
  py::dict d;
  d["count"] = c.count;
  d["incidence_count"] = c.incidence_count;
  d["main_term"] = c.main_term;
  d["window"] = c.window;
  d["count_within"] = c.count_within;
  d["incidence_within"] = c.incidence_within;
  d["relative_deviation"] = c.relative_deviation;
  return d;
}

py::dict overlap_dict(const OverlapReport& r) {
  py::dict d;
  d["best_point"] = py::make_tuple(r.best_x, r.best_y);
  d["covered"] = r.covered;
  d["total"] = r.total;
  d["fraction"] = fraction(r.fraction);
  d["candidates_examined"] = r.candidates_examined;
  return d;
}

ExpansionKind parse_kind(const std::string& kind) {
  if (kind == "E") return ExpansionKind::kEdge;
  if (kind == "T") return ExpansionKind::kTriple;
  if (kind == "V") return ExpansionKind::kVertex;
  throw Error(ErrorCode::kInvalidInput, "kind must be E, T or V");
}

std::vector<Point> to_points(const std::vector<std::pair<std::int64_t, std::int64_t>>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse 3-uniform hypergraph expanders from Sidon sets";

  py::register_exception<Error>(m, "HyperexpError", PyExc_ValueError);

  py::class_<SidonSet>(m, "SidonSet")
      .def(py::init<int, std::vector<Element>>(), py::arg("t"), py::arg("elements"))
      .def_property_readonly("t", &SidonSet::dimension)
      .def_property_readonly("elements", &SidonSet::elements)
      .def("__len__", &SidonSet::size)
      .def("__eq__", [](const SidonSet& a, const SidonSet& b) { return a == b; })
      .def("__repr__", [](const SidonSet& s) {
        std::string out = "SidonSet(t=" + std::to_string(s.dimension()) + ", [";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
        return out + "])";
      });

  m.def("is_sidon", [](int t, const std::vector<Element>& xs) { return verify_sidon(t, xs).ok(); },
        py::arg("t"), py::arg("elements"));
  m.def("sidon_violation",
        [](int t, const std::vector<Element>& xs) -> py::object {
          const SidonCheck c = verify_sidon(t, xs);
          if (c.ok()) return py::none();
          if (c.violation) {
            const SidonViolation& v = *c.violation;
            return py::make_tuple(v.s1, v.s2, v.s1p, v.s2p);
          }
          return py::str(c.detail);
        },
        py::arg("t"), py::arg("elements"));
  m.def("random_sidon", &random_sidon, py::arg("t"), py::arg("d"), py::arg("seed"),
        py::arg("max_attempts") = 0);
  m.def("gold_sidon", &gold_sidon, py::arg("m"));
  m.def("pair_sums", &pair_sums, py::arg("s"));

  m.def("spectrum",
        [](int t, std::vector<Element> generators) { return spectrum(CayleyGraph(t, std::move(generators))).values(); },
        py::arg("t"), py::arg("generators"));
  m.def("spectral_gap",
        [](const SidonSet& s) { return fraction(spectrum(CayleyGraph(s.dimension(), s.elements())).epsilon()); },
        py::arg("s"));
  m.def("square_relation_holds", [](const SidonSet& s) { return verify_square_relation(s).ok(); },
        py::arg("s"));

  py::class_<Hypergraph3>(m, "Hypergraph")
      .def(py::init([](const SidonSet& s, bool materialize) { return Hypergraph3::build(s, materialize); }),
           py::arg("s"), py::arg("materialize") = true)
      .def_property_readonly("t", &Hypergraph3::dimension)
      .def_property_readonly("n", &Hypergraph3::vertex_count)
      .def_property_readonly("d", &Hypergraph3::degree)
      .def_property_readonly("edge_count", &Hypergraph3::edge_count)
      .def_property_readonly("triple_count", &Hypergraph3::triple_count)
      .def_property_readonly("pair_degree", &Hypergraph3::pair_degree)
      .def("is_edge", &Hypergraph3::is_edge)
      .def("edge_cliques", [](const Hypergraph3& h, Element u, Element v) {
        const auto c = h.edge_cliques(Edge::of(u, v));
        return py::make_tuple(c[0], c[1]);
      })
      .def("triples_containing",
           [](const Hypergraph3& h, Element u, Element v) {
             py::list out;
             for (const Triple& t : h.triples_containing(Edge::of(u, v))) out.append(triple_tuple(t));
             return out;
           })
      .def("edges",
           [](const Hypergraph3& h) {
             py::list out;
             for (const Edge& e : h.edges()) out.append(edge_tuple(e));
             return out;
           })
      .def("triples", [](const Hypergraph3& h) {
        py::list out;
        for (const Triple& t : h.triples()) out.append(triple_tuple(t));
        return out;
      });

  m.def("expansion",
        [](const Hypergraph3& h, const std::string& kind) {
          const ExpansionResult r = expansion_bruteforce(h, parse_kind(kind));
          return py::make_tuple(fraction(r.ratio), r.witness);
        },
        py::arg("h"), py::arg("kind"));
  m.def("expansion_certificate",
        [](const Hypergraph3& h) {
          const ExpansionCertificate c = expansion_certificate(h);
          py::dict d;
          d["epsilon"] = fraction(c.epsilon);
          d["edge_bound"] = fraction(c.edge_bound);
          d["triple_bound"] = fraction(c.triple_bound);
          return d;
        },
        py::arg("h"));
  m.def("count_crossing_triples",
        [](const Hypergraph3& h, const std::vector<Element>& a, const std::vector<Element>& b,
           const std::vector<Element>& c) { return crossing_dict(count_crossing_triples(h, a, b, c)); },
        py::arg("h"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("random_thirds", &random_thirds, py::arg("t"), py::arg("seed"));

  m.def("aux_spectrum",
        [](const Hypergraph3& h) {
          const AuxSpectralBounds b = aux_spectral_bounds(AuxGraph::build(h));
          py::dict d;
          d["lambda2"] = b.lambda2;
          d["lambda_n"] = b.lambda_n;
          d["lambda_aux"] = b.lambda_aux;
          d["degree"] = b.degree;
          d["ratio"] = b.ratio();
          return d;
        },
        py::arg("h"));
  m.def("mixing_profile",
        [](const Hypergraph3& h, std::size_t start, std::size_t steps, bool exact) {
          const AuxGraph g = AuxGraph::build(h);
          const AuxSpectralBounds b = aux_spectral_bounds(g);
          const MixingProfile p =
              exact ? mixing_profile(g, exact_point_distribution(g.vertex_count(), start), steps, b)
                    : mixing_profile(g, point_distribution(g.vertex_count(), start), steps, b);
          py::dict d;
          d["distance"] = p.distance;
          d["envelope"] = p.envelope;
          d["within_envelope"] = p.within_envelope;
          d["contracts_stepwise"] = p.contracts_stepwise;
          return d;
        },
        py::arg("h"), py::arg("start") = 0, py::arg("steps") = 50, py::arg("exact") = false);
  m.def("monte_carlo_walk",
        [](const Hypergraph3& h, std::size_t steps, std::size_t trials, std::uint64_t seed,
           std::size_t workers, int bucket_bits) {
          MonteCarloOptions o;
          o.steps = steps;
          o.trials = trials;
          o.seed = seed;
          o.workers = workers;
          o.bucket_bits = bucket_bits;
          const WalkHistogram w = monte_carlo_walk(h, o);
          py::dict d;
          d["bucket_bits"] = w.bucket_bits;
          d["counts"] = w.counts;
          d["tv_estimate"] = w.tv_estimate;
          d["tv_stderr"] = w.tv_stderr;
          return d;
        },
        py::arg("h"), py::arg("steps"), py::arg("trials"), py::arg("seed") = 0, py::arg("workers") = 1,
        py::arg("bucket_bits") = -1);

  m.def("point_in_triangle",
        [](std::pair<std::int64_t, std::int64_t> p, std::pair<std::int64_t, std::int64_t> a,
           std::pair<std::int64_t, std::int64_t> b, std::pair<std::int64_t, std::int64_t> c) {
          return std::string(to_string(point_in_triangle({p.first, p.second}, {a.first, a.second},
                                                         {b.first, b.second}, {c.first, c.second})));
        },
        py::arg("p"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("complete_overlap",
        [](const std::vector<std::pair<std::int64_t, std::int64_t>>& xy, std::size_t grid, std::size_t workers) {
          const std::vector<Point> pos = to_points(xy);
          const auto tri = complete_triangles(pos.size());
          const CandidateStrategy s = grid == 0 ? CandidateStrategy::vertex_centroids() : CandidateStrategy::grid(grid);
          return overlap_dict(overlap_estimate(pos, tri, s, workers));
        },
        py::arg("points"), py::arg("grid") = 0, py::arg("workers") = 1);
  m.def("hypergraph_overlap",
        [](const Hypergraph3& h, std::uint64_t embed_seed, std::size_t grid, std::size_t workers) {
          const CandidateStrategy s = grid == 0 ? CandidateStrategy::vertex_centroids() : CandidateStrategy::grid(grid);
          return overlap_dict(overlap_estimate(h, random_embedding(h.dimension(), embed_seed), s, workers));
        },
        py::arg("h"), py::arg("embed_seed") = 0, py::arg("grid") = 0, py::arg("workers") = 1);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
  m.attr("__version__") = cli::kVersion;
}
