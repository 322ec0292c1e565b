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

#include "hyperexp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "hyperexp/error.hpp"

namespace hyperexp {

SparseGraph::SparseGraph(const std::vector<std::vector<std::uint32_t>>& adjacency) {
  offsets_.reserve(adjacency.size() + 1);
  offsets_.push_back(0);
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    for (std::uint32_t w : adjacency[v]) {
      if (w >= adjacency.size()) {
        throw Error(ErrorCode::kInvalidInput, "neighbour index out of range");
      }
      if (w == v) throw Error(ErrorCode::kInvalidInput, "self-loop at vertex " + std::to_string(v));
      targets_.push_back(w);
    }
    offsets_.push_back(targets_.size());
  }
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    for (std::uint32_t w : adjacency[v]) {
      const auto& back = adjacency[w];
      if (std::count(back.begin(), back.end(), static_cast<std::uint32_t>(v)) !=
          std::count(adjacency[v].begin(), adjacency[v].end(), w)) {
        throw Error(ErrorCode::kInvalidInput, "adjacency is not symmetric");
      }
    }
  }
}

SparseGraph SparseGraph::from_csr(std::vector<std::size_t> offsets,
                                  std::vector<std::uint32_t> targets) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != targets.size() ||
      !std::is_sorted(offsets.begin(), offsets.end())) {
    throw Error(ErrorCode::kInvalidInput, "malformed CSR offsets");
  }
  const std::size_t n = offsets.size() - 1;
  for (std::uint32_t w : targets) {
    if (w >= n) throw Error(ErrorCode::kInvalidInput, "neighbour index out of range");
  }
  SparseGraph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  return g;
}

long SparseGraph::regular_degree() const {
  if (vertex_count() == 0) return 0;
  const std::size_t d0 = degree(0);
  for (std::size_t v = 1; v < vertex_count(); ++v) {
    if (degree(v) != d0) return -1;
  }
  return static_cast<long>(d0);
}

std::vector<double> dense_spectrum(const SparseGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    for (std::uint32_t w : g.neighbors(static_cast<std::size_t>(v))) a(v, w) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotConverged, "dense eigensolve failed");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

namespace {

using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void remove_mean(Vector& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

void normalize(Vector& x) {
  const double norm = std::sqrt(dot(x, x));
  if (norm == 0.0) throw Error(ErrorCode::kNotConverged, "power iteration collapsed to zero");
  for (double& v : x) v /= norm;
}

// y = (shift I + sign A) x
void apply(const SparseGraph& g, double shift, double sign, const Vector& x, Vector& y) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    double acc = 0.0;
    for (std::uint32_t w : g.neighbors(v)) acc += x[w];
    y[v] = shift * x[v] + sign * acc;
  }
}

// Power iteration for the top eigenvalue of (shift I + sign A), optionally
// restricted to the complement of the all-ones vector.
EigenBracket top_eigenvalue(const SparseGraph& g, double shift, double sign,
                            bool deflate_ones, const PowerIterationOptions& opts) {
  const std::size_t n = g.vertex_count();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector x(n), y(n);
  for (double& v : x) v = unit(rng);
  if (deflate_ones) remove_mean(x);
  normalize(x);

  double rho = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    apply(g, shift, sign, x, y);
    if (deflate_ones) remove_mean(y);
    const double next = dot(x, y);
    normalize(y);
    std::swap(x, y);
    if (it > 1 && std::abs(next - rho) <= opts.relative_tolerance * std::max(1.0, std::abs(next))) {
      apply(g, shift, sign, x, y);
      if (deflate_ones) remove_mean(y);
      const double q = dot(x, y);
      double residual = 0.0;
      for (std::size_t v = 0; v < n; ++v) residual += (y[v] - q * x[v]) * (y[v] - q * x[v]);
      residual = std::sqrt(residual);
      return EigenBracket{q, q - residual, q + residual, it};
    }
    rho = next;
  }
  throw Error(ErrorCode::kNotConverged,
              "power iteration did not converge in " + std::to_string(opts.max_iterations) +
                  " iterations");
}

}  // namespace

ExtremeEigenvalues power_extreme_eigenvalues(const SparseGraph& g,
                                             const PowerIterationOptions& opts) {
  const long deg = g.regular_degree();
  if (deg < 0) throw Error(ErrorCode::kInvalidInput, "power iteration requires a regular graph");
  if (g.vertex_count() < 2) throw Error(ErrorCode::kInvalidInput, "graph needs at least two vertices");
  const double d = static_cast<double>(deg);

  // Both shifted operators are positive semidefinite, so the dominant
  // eigenvalue is the one sought.
  EigenBracket second = top_eigenvalue(g, d, 1.0, true, opts);
  second.estimate -= d;
  second.lower -= d;
  second.upper -= d;

  EigenBracket smallest = top_eigenvalue(g, d, -1.0, false, opts);
  const double est = d - smallest.estimate;
  const double lo = d - smallest.upper;
  const double hi = d - smallest.lower;
  smallest.estimate = est;
  smallest.lower = lo;
  smallest.upper = hi;
  return {second, smallest};
}

}  // namespace hyperexp
