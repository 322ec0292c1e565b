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

#ifndef HYPEREXP_WALKS_HPP
#define HYPEREXP_WALKS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperexp/hypergraph.hpp"
#include "hyperexp/linalg.hpp"

namespace hyperexp {

using BigInt = boost::multiprecision::cpp_int;

// Every f with e u f in T: for each triple {u, v, w} through e = {u, v}
// (in triples_containing order) emits {u, w} then {v, w}.
std::vector<Edge> neighbors(const Hypergraph3& h, const Edge& e);

/**
 * The graph G on skeleton edges with e ~ f iff e u f is a triple; the
 * random walk on the edges of H is the simple random walk on G.
 * Built from a materialized hypergraph; vertex i of G is edge index i.
 */
class AuxGraph {
 public:
  // Throws kInvalidInput if h is not materialized or G is not regular.
  static AuxGraph build(const Hypergraph3& h);

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  // Degree found by enumeration; always 2 (2d - 4).
  std::size_t measured_degree() const noexcept { return degree_; }
  // The 2d - 4 that the hypergraph's pair degree suggests.
  std::size_t stated_degree() const noexcept { return pair_degree_; }
  std::span<const std::uint32_t> neighbors(std::size_t e) const { return graph_.neighbors(e); }
  const SparseGraph& graph() const noexcept { return graph_; }

  // Triangles {e, f, g} of G with e u f u g a single triple, through e.
  std::size_t triple_triangles_through(std::size_t e) const;
  // All triangles of G through e (includes triangles spread over a clique).
  std::size_t triangles_through(std::size_t e) const;

 private:
  SparseGraph graph_;
  std::size_t degree_ = 0;
  std::size_t pair_degree_ = 0;
  std::vector<Edge> edges_;
};

using EdgeDistribution = std::vector<double>;

/// Probability vector stored as integer weights over a common denominator.
struct ExactDistribution {
  std::vector<BigInt> weights;
  BigInt denominator{1};
};

EdgeDistribution point_distribution(std::size_t size, std::size_t edge);
EdgeDistribution uniform_distribution(std::size_t size);
ExactDistribution exact_point_distribution(std::size_t size, std::size_t edge);
ExactDistribution exact_uniform_distribution(std::size_t size);

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr std::size_t kExactEvolutionMaxEdges = 512;

// Applies the uniform-neighbour transition operator `steps` times. Throws
// kInvalidInput when p0 is negative somewhere, has the wrong length, or
// does not sum to 1 within kNormalizationTolerance.
EdgeDistribution evolve(const AuxGraph& g, EdgeDistribution p0, std::size_t steps);
// Exact version: the denominator grows by a factor D per step.
ExactDistribution evolve(const AuxGraph& g, ExactDistribution p0, std::size_t steps);

// ||p - u||_2.
double distance_to_uniform(const EdgeDistribution& p);
double distance_to_uniform(const ExactDistribution& p);

enum class EigenMethod { kAuto, kDense, kPower };

inline constexpr std::size_t kDenseAuxLimit = 4096;

struct AuxSpectralBounds {
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double lambda_aux = 0.0;  // max(|lambda2|, |lambdaN|)
  std::size_t degree = 0;
  bool dense = true;
  // Residual brackets; for dense solves they collapse onto the estimate.
  EigenBracket second;
  EigenBracket smallest;

  double ratio() const { return lambda_aux / static_cast<double>(degree); }
};

inline constexpr double kIntegerSnapTolerance = 1e-9;

// kAuto solves densely for at most 4096 vertices, by power iteration above.
// Dense eigenvalues within kIntegerSnapTolerance of an integer are rounded
// to it.
AuxSpectralBounds aux_spectral_bounds(const AuxGraph& g, EigenMethod method = EigenMethod::kAuto,
                                      const PowerIterationOptions& opts = {});

struct MixingProfile {
  std::vector<double> distance;  // ||p_i - u||_2 for i = 0..steps
  std::vector<double> envelope;  // (lambda_aux / D)^i
  bool exact = false;
  bool within_envelope = true;
  // ||p_{i+1} - u|| <= ratio ||p_i - u|| at every step.
  bool contracts_stepwise = true;
  std::optional<std::size_t> first_violation;
};

// Floating path: comparisons allow `tolerance` (absolute).
MixingProfile mixing_profile(const AuxGraph& g, const EdgeDistribution& p0, std::size_t steps,
                             const AuxSpectralBounds& bounds, double tolerance = 1e-9);
// Exact path: lambda_aux is taken as an exact upper bound (snapped to an
// integer when within 1e-9 of one) and every comparison is in integers.
MixingProfile mixing_profile(const AuxGraph& g, const ExactDistribution& p0, std::size_t steps,
                             const AuxSpectralBounds& bounds);

struct MonteCarloOptions {
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::size_t trials = 1;
  std::size_t workers = 1;
  // log2 of buckets per generator pair; negative picks the largest value
  // (at most t - 1) keeping the bucket count <= 2^20.
  int bucket_bits = -1;
  // Fixed start edge; uniformly random per trial when empty.
  std::optional<Edge> start;
};

struct WalkHistogram {
  MonteCarloOptions options;
  int bucket_bits = 0;
  std::vector<std::uint64_t> counts;  // final-edge occupancy per bucket
  double tv_estimate = 0.0;           // 1/2 sum |freq - 1/K|
  double tv_stderr = 0.0;             // delta-method plug-in standard error
};

inline constexpr int kMaxImplicitWalkDimension = 24;

// Walks on the implicit hypergraph; trial k draws from substream (seed, k),
// so the result is independent of the worker count. Buckets partition the
// skeleton into classes of equal size: edge {r, r + s'_p} with r the
// endpoint whose bit at the top bit of s'_p is clear maps to
// p * 2^b + (r without that bit) >> (t - 1 - b).
WalkHistogram monte_carlo_walk(const Hypergraph3& h, const MonteCarloOptions& opts);

// The bucket of skeleton edge e; with bucket_bits = t - 1 this is a bijection
// from E onto [0, |E|).
std::size_t walk_bucket(const Hypergraph3& h, const Edge& e, int bucket_bits);

struct RapidMixingReport {
  Rational epsilon{0};
  std::size_t measured_degree = 0;
  std::size_t stated_degree = 0;
  double lambda_aux = 0.0;
  double lambda_aux_ratio = 0.0;
  double alpha_observed = 0.0;  // max_i (||p_i - u|| / ||p_0 - u||)^(1/i)
  bool certified = false;       // epsilon > 0 and ratio < 1
  std::optional<double> omega_constant;  // (1 - ratio) / epsilon^4
  std::size_t steps = 0;
};

RapidMixingReport rapid_mixing_check(const Hypergraph3& h, std::size_t steps = 50);

}  // namespace hyperexp

#endif  // HYPEREXP_WALKS_HPP
