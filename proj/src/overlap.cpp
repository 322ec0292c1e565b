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


#include "hyperexp/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "hyperexp/error.hpp"
#include "hyperexp/random.hpp"

namespace hyperexp {

const char* to_string(Containment c) {
  switch (c) {
    case Containment::kInside: return "inside";
    case Containment::kBoundary: return "boundary";
    case Containment::kOutside: return "outside";
  }
  return "?";
}

int orientation(const Point& a, const Point& b, const Point& c) {
  const __int128 det = static_cast<__int128>(b.x - a.x) * (c.y - a.y) -
                       static_cast<__int128>(b.y - a.y) * (c.x - a.x);
  return (det > 0) - (det < 0);
}

Containment point_in_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  const int abc = orientation(a, b, c);
  if (abc == 0) {
    if (orientation(a, b, p) != 0 || orientation(a, c, p) != 0 || orientation(b, c, p) != 0) {
      return Containment::kOutside;
    }
    const auto [xlo, xhi] = std::minmax({a.x, b.x, c.x});
    const auto [ylo, yhi] = std::minmax({a.y, b.y, c.y});
    const bool on = p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi;
    return on ? Containment::kBoundary : Containment::kOutside;
  }
  const int o1 = orientation(a, b, p);
  const int o2 = orientation(b, c, p);
  const int o3 = orientation(c, a, p);
  if (o1 == -abc || o2 == -abc || o3 == -abc) return Containment::kOutside;
  if (o1 == 0 || o2 == 0 || o3 == 0) return Containment::kBoundary;
  return Containment::kInside;
}

namespace {

void check_point(const Point& p) {
  if (p.x < -kMaxCoordinate || p.x > kMaxCoordinate || p.y < -kMaxCoordinate ||
      p.y > kMaxCoordinate) {
    throw Error(ErrorCode::kInvalidInput, "coordinate magnitude exceeds 2^40");
  }
}

Point scaled(const Point& p) { return {3 * p.x, 3 * p.y}; }

void check_embedding_dimension(int t) {
  check_dimension(t);
  if (t > kMaxEmbeddingDimension) throw Error(ErrorCode::kSizeLimit, "embeddings support t <= 24");
}

void check_triangles(std::span<const Point> positions, std::span<const TriangleIndices> triangles) {
  if (triangles.empty()) throw Error(ErrorCode::kInvalidInput, "empty triple set");
  for (const auto& tri : triangles) {
    for (std::uint32_t v : tri) {
      if (v >= positions.size()) throw Error(ErrorCode::kInvalidInput, "triangle vertex has no position");
    }
  }
}

}  // namespace

Embedding::Embedding(int t, std::vector<Point> positions) : t_(t), positions_(std::move(positions)) {
  check_embedding_dimension(t);
  if (positions_.size() != group_order(t)) {
    throw Error(ErrorCode::kInvalidInput, "embedding needs exactly one position per vertex");
  }
  for (const Point& p : positions_) check_point(p);
}

Embedding random_embedding(int t, std::uint64_t seed) {
  check_embedding_dimension(t);
  std::mt19937_64 rng(seed);
  std::vector<Point> positions(group_order(t));
  const auto range = static_cast<std::uint64_t>(kQuantization) + 1;
  for (Point& p : positions) {
    p.x = static_cast<std::int64_t>(bounded_draw(rng, range));
    p.y = static_cast<std::int64_t>(bounded_draw(rng, range));
  }
  return Embedding(t, std::move(positions));
}

std::int64_t quantize(double coordinate) {
  const double q = coordinate * kQuantization;
  if (!std::isfinite(q) || std::abs(q) > static_cast<double>(kMaxCoordinate)) {
    throw Error(ErrorCode::kInvalidInput, "coordinate out of range");
  }
  return std::llround(q);
}

std::vector<TriangleIndices> complete_triangles(std::size_t m) {
  std::vector<TriangleIndices> out;
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = a + 1; b < m; ++b) {
      for (std::uint32_t c = b + 1; c < m; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

std::vector<TriangleIndices> hypergraph_triangles(const Hypergraph3& h) {
  if (!h.materialized()) throw Error(ErrorCode::kInvalidInput, "overlap requires materialized triples");
  std::vector<TriangleIndices> out;
  out.reserve(h.triples().size());
  for (const Triple& t : h.triples()) out.push_back({t.a, t.b, t.c});
  return out;
}

std::vector<Point> candidate_points(std::span<const Point> positions,
                                    std::span<const TriangleIndices> triangles,
                                    const CandidateStrategy& strategy) {
  if (positions.empty()) throw Error(ErrorCode::kInvalidInput, "no positions");
  for (const Point& p : positions) check_point(p);
  std::vector<Point> out;
  if (strategy.kind == CandidateStrategy::Kind::kVertexCentroids) {
    for (const Point& p : positions) out.push_back(scaled(p));
    const std::size_t limit = std::min(triangles.size(), kMaxCentroidCandidates);
    for (std::size_t i = 0; i < limit; ++i) {
      const auto& [a, b, c] = triangles[i];
      out.push_back({positions[a].x + positions[b].x + positions[c].x,
                     positions[a].y + positions[b].y + positions[c].y});
    }
    return out;
  }
  if (strategy.k == 0) throw Error(ErrorCode::kInvalidInput, "candidate count must be positive");
  Point lo = scaled(positions[0]), hi = lo;
  for (const Point& p : positions) {
    const Point s = scaled(p);
    lo = {std::min(lo.x, s.x), std::min(lo.y, s.y)};
    hi = {std::max(hi.x, s.x), std::max(hi.y, s.y)};
  }
  if (strategy.kind == CandidateStrategy::Kind::kGrid) {
    auto axis = [&](std::int64_t a, std::int64_t b, std::size_t i) -> std::int64_t {
      if (strategy.k == 1) return a + (b - a) / 2;
      return a + static_cast<std::int64_t>(static_cast<__int128>(b - a) * i / (strategy.k - 1));
    };
    for (std::size_t i = 0; i < strategy.k; ++i) {
      for (std::size_t j = 0; j < strategy.k; ++j) {
        out.push_back({axis(lo.x, hi.x, i), axis(lo.y, hi.y, j)});
      }
    }
    return out;
  }
  std::mt19937_64 rng(strategy.seed);
  for (std::size_t i = 0; i < strategy.k; ++i) {
    const auto x = static_cast<std::int64_t>(bounded_draw(rng, static_cast<std::uint64_t>(hi.x - lo.x) + 1));
    const auto y = static_cast<std::int64_t>(bounded_draw(rng, static_cast<std::uint64_t>(hi.y - lo.y) + 1));
    out.push_back({lo.x + x, lo.y + y});
  }
  return out;
}

std::uint64_t covered_count(std::span<const Point> positions,
                            std::span<const TriangleIndices> triangles, const Point& scaled_point) {
  std::uint64_t count = 0;
  for (const auto& [a, b, c] : triangles) {
    const Point pa = scaled(positions[a]), pb = scaled(positions[b]), pc = scaled(positions[c]);
    if (scaled_point.x < std::min({pa.x, pb.x, pc.x}) || scaled_point.x > std::max({pa.x, pb.x, pc.x}) ||
        scaled_point.y < std::min({pa.y, pb.y, pc.y}) || scaled_point.y > std::max({pa.y, pb.y, pc.y})) {
      continue;
    }
    if (point_in_triangle(scaled_point, pa, pb, pc) != Containment::kOutside) ++count;
  }
  return count;
}

namespace {

struct Best {
  std::uint64_t covered = 0;
  Point point;
  bool set = false;

  void offer(std::uint64_t c, const Point& p) {
    if (!set || c > covered || (c == covered && p < point)) {
      covered = c;
      point = p;
      set = true;
    }
  }
};

}  // namespace

OverlapReport overlap_estimate(std::span<const Point> positions,
                               std::span<const TriangleIndices> triangles,
                               std::span<const Point> scaled_candidates, std::size_t workers) {
  check_triangles(positions, triangles);
  for (const Point& p : positions) check_point(p);
  if (scaled_candidates.empty()) throw Error(ErrorCode::kInvalidInput, "no candidate points");
  workers = std::max<std::size_t>(1, std::min(workers, scaled_candidates.size()));

  std::vector<Best> partial(workers);
  auto run = [&](std::size_t w) {
    const std::size_t begin = scaled_candidates.size() * w / workers;
    const std::size_t end = scaled_candidates.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      partial[w].offer(covered_count(positions, triangles, scaled_candidates[i]), scaled_candidates[i]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& th : threads) th.join();
  }
  Best best;
  for (const Best& b : partial) {
    if (b.set) best.offer(b.covered, b.point);
  }

  OverlapReport out;
  out.best_point_scaled = best.point;
  out.best_x = static_cast<double>(best.point.x) / 3.0;
  out.best_y = static_cast<double>(best.point.y) / 3.0;
  out.covered = best.covered;
  out.total = triangles.size();
  out.fraction = Rational(static_cast<std::int64_t>(out.covered), static_cast<std::int64_t>(out.total));
  out.candidates_examined = scaled_candidates.size();
  return out;
}

OverlapReport overlap_estimate(std::span<const Point> positions,
                               std::span<const TriangleIndices> triangles,
                               const CandidateStrategy& strategy, std::size_t workers) {
  check_triangles(positions, triangles);
  const std::vector<Point> candidates = candidate_points(positions, triangles, strategy);
  return overlap_estimate(positions, triangles, candidates, workers);
}

OverlapReport overlap_estimate(const Hypergraph3& h, const Embedding& emb,
                               const CandidateStrategy& strategy, std::size_t workers) {
  if (emb.dimension() != h.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimension differs from the hypergraph");
  }
  const std::vector<TriangleIndices> triangles = hypergraph_triangles(h);
  return overlap_estimate(emb.positions(), triangles, strategy, workers);
}

}  // namespace hyperexp
