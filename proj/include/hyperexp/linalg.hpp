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

#ifndef HYPEREXP_LINALG_HPP
#define HYPEREXP_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperexp {

/// Undirected simple graph in compressed sparse row form.
class SparseGraph {
 public:
  SparseGraph() = default;
  // adjacency[v] lists the neighbours of v; must be symmetric and loop-free.
  explicit SparseGraph(const std::vector<std::vector<std::uint32_t>>& adjacency);
  // Trusted CSR input (symmetry is the caller's responsibility).
  static SparseGraph from_csr(std::vector<std::size_t> offsets,
                              std::vector<std::uint32_t> targets);

  std::size_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }

  // Common degree, or -1 if the graph is not regular.
  long regular_degree() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

// All adjacency eigenvalues, sorted descending, via a dense symmetric solve.
std::vector<double> dense_spectrum(const SparseGraph& g);

// An eigenvalue estimate with an enclosing interval from the residual norm.
struct EigenBracket {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
};

struct PowerIterationOptions {
  double relative_tolerance = 1e-9;
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct ExtremeEigenvalues {
  EigenBracket second;    // lambda_2
  EigenBracket smallest;  // lambda_N
};

// lambda_2 from power iteration on A + D I restricted to the complement of
// the all-ones vector; lambda_N from power iteration on D I - A. Requires a
// D-regular graph. Throws kNotConverged when the iteration cap is reached.
ExtremeEigenvalues power_extreme_eigenvalues(const SparseGraph& g,
                                             const PowerIterationOptions& opts = {});

}  // namespace hyperexp

#endif  // HYPEREXP_LINALG_HPP
