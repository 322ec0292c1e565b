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


#ifndef HYPEREXP_OVERLAP_HPP
#define HYPEREXP_OVERLAP_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperexp/gf2.hpp"
#include "hyperexp/hypergraph.hpp"

namespace hyperexp {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Coordinates are bounded so that orientation determinants fit in 128 bits
// after the internal factor-3 scaling.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 40;
inline constexpr double kQuantization = 1e6;
inline constexpr int kMaxEmbeddingDimension = 24;

enum class Containment { kInside, kBoundary, kOutside };

const char* to_string(Containment c);

// Sign of the cross product (b - a) x (c - a): +1, 0 or -1.
int orientation(const Point& a, const Point& b, const Point& c);

// Exact. A degenerate (collinear) triangle contains exactly the points of the
// segment spanned by its vertices, all of them on its boundary.
Containment point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c);

/// Integer positions for the 2^t vertices of a hypergraph, indexed by vertex.
/// Throws kSizeLimit for t > kMaxEmbeddingDimension.
class Embedding {
 public:
  Embedding(int t, std::vector<Point> positions);

  int dimension() const noexcept { return t_; }
  const std::vector<Point>& positions() const noexcept { return positions_; }
  const Point& operator[](Element v) const { return positions_[v]; }

 private:
  int t_;
  std::vector<Point> positions_;
};

// Uniform integer positions in [0, 10^6]^2.
Embedding random_embedding(int t, std::uint64_t seed);
// llround(x * 10^6).
std::int64_t quantize(double coordinate);

using TriangleIndices = std::array<std::uint32_t, 3>;

// All C(m, 3) index triples of m points, lexicographic.
std::vector<TriangleIndices> complete_triangles(std::size_t m);
std::vector<TriangleIndices> hypergraph_triangles(const Hypergraph3& h);

struct CandidateStrategy {
  enum class Kind { kGrid, kRandom, kVertexCentroids };
  Kind kind = Kind::kVertexCentroids;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  static CandidateStrategy grid(std::size_t k) { return {Kind::kGrid, k, 0}; }
  static CandidateStrategy random(std::uint64_t seed, std::size_t k) {
    return {Kind::kRandom, k, seed};
  }
  static CandidateStrategy vertex_centroids() { return {Kind::kVertexCentroids, 0, 0}; }
};

inline constexpr std::size_t kMaxCentroidCandidates = std::size_t{1} << 16;

// Candidate points in the scaled frame (every coordinate times 3, so
// triangle centroids are lattice points). Grid: k x k over the bounding box;
// random: k uniform points in the bounding box; vertex-centroids: every
// position, then the centroids of the first kMaxCentroidCandidates triangles.
std::vector<Point> candidate_points(std::span<const Point> positions,
                                    std::span<const TriangleIndices> triangles,
                                    const CandidateStrategy& strategy);

struct OverlapReport {
  Point best_point_scaled;  // in the factor-3 frame
  double best_x = 0.0;      // best point in input units
  double best_y = 0.0;
  std::uint64_t covered = 0;
  std::uint64_t total = 0;
  Rational fraction{0};
  std::size_t candidates_examined = 0;
};

std::uint64_t covered_count(std::span<const Point> positions,
                            std::span<const TriangleIndices> triangles, const Point& scaled_point);

// Maximum covered fraction over the candidates; ties go to the
// lexicographically smallest point. Throws kInvalidInput on an empty
// triangle or candidate set.
OverlapReport overlap_estimate(std::span<const Point> positions,
                               std::span<const TriangleIndices> triangles,
                               std::span<const Point> scaled_candidates, std::size_t workers = 1);
OverlapReport overlap_estimate(std::span<const Point> positions,
                               std::span<const TriangleIndices> triangles,
                               const CandidateStrategy& strategy, std::size_t workers = 1);
// Requires a materialized build of matching dimension.
OverlapReport overlap_estimate(const Hypergraph3& h, const Embedding& emb,
                               const CandidateStrategy& strategy, std::size_t workers = 1);

}  // namespace hyperexp

#endif  // HYPEREXP_OVERLAP_HPP
