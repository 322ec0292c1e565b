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

#include "hyperexp/walks.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperexp/error.hpp"
#include "hyperexp/random.hpp"

namespace hyperexp {

using boost::multiprecision::cpp_rational;

std::vector<Edge> neighbors(const Hypergraph3& h, const Edge& e) {
  std::vector<Edge> out;
  out.reserve(2 * h.pair_degree());
  for (const Triple& t : h.triples_containing(e)) {
    Element w = t.a;
    if (w == e.u || w == e.v) w = (t.b == e.u || t.b == e.v) ? t.c : t.b;
    out.push_back(Edge::of(e.u, w));
    out.push_back(Edge::of(e.v, w));
  }
  return out;
}

AuxGraph AuxGraph::build(const Hypergraph3& h) {
  const auto edges = h.edges();
  AuxGraph g;
  g.pair_degree_ = h.pair_degree();
  g.edges_.assign(edges.begin(), edges.end());
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  offsets.reserve(edges.size() + 1);
  targets.reserve(edges.size() * 2 * h.pair_degree());
  for (const Edge& e : edges) {
    for (const Edge& f : hyperexp::neighbors(h, e)) {
      targets.push_back(static_cast<std::uint32_t>(h.require_edge_index(f)));
    }
    offsets.push_back(targets.size());
  }
  g.graph_ = SparseGraph::from_csr(std::move(offsets), std::move(targets));

  const long degree = g.graph_.regular_degree();
  if (degree < 0) throw Error(ErrorCode::kInvalidInput, "auxiliary graph is not regular");
  g.degree_ = static_cast<std::size_t>(degree);

  for (std::size_t e = 0; e < g.vertex_count(); ++e) {
    std::vector<std::uint32_t> sorted(g.neighbors(e).begin(), g.neighbors(e).end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kInvalidInput, "auxiliary graph has a repeated neighbour");
    }
    for (std::uint32_t f : sorted) {
      auto back = g.neighbors(f);
      if (std::find(back.begin(), back.end(), static_cast<std::uint32_t>(e)) == back.end()) {
        throw Error(ErrorCode::kInvalidInput, "auxiliary graph is not symmetric");
      }
    }
  }
  return g;
}

namespace {

bool adjacent(const SparseGraph& g, std::size_t a, std::size_t b) {
  auto n = g.neighbors(a);
  return std::find(n.begin(), n.end(), static_cast<std::uint32_t>(b)) != n.end();
}

}  // namespace

std::size_t AuxGraph::triple_triangles_through(std::size_t e) const {
  auto nb = neighbors(e);
  std::size_t count = 0;
  for (std::size_t x = 0; x < nb.size(); ++x) {
    for (std::size_t y = x + 1; y < nb.size(); ++y) {
      if (!adjacent(graph_, nb[x], nb[y])) continue;
      std::array<Element, 6> v{edges_[e].u, edges_[e].v, edges_[nb[x]].u,
                               edges_[nb[x]].v, edges_[nb[y]].u, edges_[nb[y]].v};
      std::sort(v.begin(), v.end());
      if (std::unique(v.begin(), v.end()) - v.begin() == 3) ++count;
    }
  }
  return count;
}

std::size_t AuxGraph::triangles_through(std::size_t e) const {
  auto nb = neighbors(e);
  std::size_t count = 0;
  for (std::size_t x = 0; x < nb.size(); ++x) {
    for (std::size_t y = x + 1; y < nb.size(); ++y) count += adjacent(graph_, nb[x], nb[y]) ? 1 : 0;
  }
  return count;
}

EdgeDistribution point_distribution(std::size_t size, std::size_t edge) {
  if (edge >= size) throw Error(ErrorCode::kInvalidInput, "start edge out of range");
  EdgeDistribution p(size, 0.0);
  p[edge] = 1.0;
  return p;
}

EdgeDistribution uniform_distribution(std::size_t size) {
  if (size == 0) throw Error(ErrorCode::kInvalidInput, "empty distribution");
  return EdgeDistribution(size, 1.0 / static_cast<double>(size));
}

ExactDistribution exact_point_distribution(std::size_t size, std::size_t edge) {
  if (edge >= size) throw Error(ErrorCode::kInvalidInput, "start edge out of range");
  ExactDistribution p{std::vector<BigInt>(size, 0), 1};
  p.weights[edge] = 1;
  return p;
}

ExactDistribution exact_uniform_distribution(std::size_t size) {
  if (size == 0) throw Error(ErrorCode::kInvalidInput, "empty distribution");
  return ExactDistribution{std::vector<BigInt>(size, 1), BigInt(size)};
}

namespace {

void check_distribution(const AuxGraph& g, const EdgeDistribution& p) {
  if (p.size() != g.vertex_count()) {
    throw Error(ErrorCode::kInvalidInput, "distribution length differs from |E|");
  }
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidInput, "negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kInvalidInput, "distribution is not normalized");
  }
}

void check_distribution(const AuxGraph& g, const ExactDistribution& p) {
  if (p.weights.size() != g.vertex_count()) {
    throw Error(ErrorCode::kInvalidInput, "distribution length differs from |E|");
  }
  if (p.denominator <= 0) throw Error(ErrorCode::kInvalidInput, "denominator must be positive");
  BigInt total = 0;
  for (const BigInt& w : p.weights) {
    if (w < 0) throw Error(ErrorCode::kInvalidInput, "negative probability");
    total += w;
  }
  if (total != p.denominator) throw Error(ErrorCode::kInvalidInput, "distribution is not normalized");
}

void step(const AuxGraph& g, const EdgeDistribution& p, EdgeDistribution& next) {
  const double inv = 1.0 / static_cast<double>(g.measured_degree());
  for (std::size_t f = 0; f < p.size(); ++f) {
    double acc = 0.0;
    for (std::uint32_t e : g.neighbors(f)) acc += p[e];
    next[f] = acc * inv;
  }
}

void step(const AuxGraph& g, ExactDistribution& p) {
  std::vector<BigInt> next(p.weights.size());
  for (std::size_t f = 0; f < next.size(); ++f) {
    BigInt acc = 0;
    for (std::uint32_t e : g.neighbors(f)) acc += p.weights[e];
    next[f] = std::move(acc);
  }
  p.weights = std::move(next);
  p.denominator *= g.measured_degree();
}

// N^2 Q^2 ||p - u||^2 = sum (N w - Q)^2
BigInt scaled_square_distance(const ExactDistribution& p) {
  const BigInt n = p.weights.size();
  BigInt total = 0;
  for (const BigInt& w : p.weights) {
    const BigInt diff = n * w - p.denominator;
    total += diff * diff;
  }
  return total;
}

double exact_distance_value(const BigInt& scaled, std::size_t n, const BigInt& denominator) {
  const BigInt den = BigInt(n) * BigInt(n) * denominator * denominator;
  return std::sqrt(static_cast<double>(cpp_rational(scaled, den)));
}

}  // namespace

EdgeDistribution evolve(const AuxGraph& g, EdgeDistribution p0, std::size_t steps) {
  check_distribution(g, p0);
  EdgeDistribution next(p0.size());
  for (std::size_t i = 0; i < steps; ++i) {
    step(g, p0, next);
    std::swap(p0, next);
  }
  return p0;
}

ExactDistribution evolve(const AuxGraph& g, ExactDistribution p0, std::size_t steps) {
  check_distribution(g, p0);
  for (std::size_t i = 0; i < steps; ++i) step(g, p0);
  return p0;
}

double distance_to_uniform(const EdgeDistribution& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  double total = 0.0;
  for (double x : p) total += (x - u) * (x - u);
  return std::sqrt(total);
}

double distance_to_uniform(const ExactDistribution& p) {
  return exact_distance_value(scaled_square_distance(p), p.weights.size(), p.denominator);
}

AuxSpectralBounds aux_spectral_bounds(const AuxGraph& g, EigenMethod method,
                                      const PowerIterationOptions& opts) {
  AuxSpectralBounds out;
  out.degree = g.measured_degree();
  const bool dense = method == EigenMethod::kDense ||
                     (method == EigenMethod::kAuto && g.vertex_count() <= kDenseAuxLimit);
  out.dense = dense;
  if (dense) {
    std::vector<double> values = dense_spectrum(g.graph());
    for (double& v : values) {
      const double r = std::round(v);
      if (std::abs(v - r) <= kIntegerSnapTolerance) v = r;
    }
    out.lambda2 = values.size() > 1 ? values[1] : values[0];
    out.lambda_n = values.back();
    out.second = EigenBracket{out.lambda2, out.lambda2, out.lambda2, 0};
    out.smallest = EigenBracket{out.lambda_n, out.lambda_n, out.lambda_n, 0};
  } else {
    const ExtremeEigenvalues ext = power_extreme_eigenvalues(g.graph(), opts);
    out.second = ext.second;
    out.smallest = ext.smallest;
    out.lambda2 = ext.second.estimate;
    out.lambda_n = ext.smallest.estimate;
  }
  out.lambda_aux = std::max(std::abs(out.lambda2), std::abs(out.lambda_n));
  return out;
}

MixingProfile mixing_profile(const AuxGraph& g, const EdgeDistribution& p0, std::size_t steps,
                             const AuxSpectralBounds& bounds, double tolerance) {
  check_distribution(g, p0);
  const double ratio = bounds.ratio();
  MixingProfile out;
  EdgeDistribution p = p0, next(p0.size());
  for (std::size_t i = 0; i <= steps; ++i) {
    const double dist = distance_to_uniform(p);
    const double env = std::pow(ratio, static_cast<double>(i));
    out.distance.push_back(dist);
    out.envelope.push_back(env);
    if (dist > env + tolerance) {
      out.within_envelope = false;
      if (!out.first_violation) out.first_violation = i;
    }
    if (i > 0 && dist > ratio * out.distance[i - 1] + tolerance) out.contracts_stepwise = false;
    if (i < steps) {
      step(g, p, next);
      std::swap(p, next);
    }
  }
  return out;
}

MixingProfile mixing_profile(const AuxGraph& g, const ExactDistribution& p0, std::size_t steps,
                             const AuxSpectralBounds& bounds) {
  check_distribution(g, p0);
  // lambda_aux as an exact rational upper bound num / den.
  BigInt num, den;
  const double nearest = std::round(bounds.lambda_aux);
  if (std::abs(bounds.lambda_aux - nearest) <= 1e-9) {
    num = static_cast<long long>(nearest);
    den = 1;
  } else {
    num = static_cast<long long>(std::ceil((bounds.lambda_aux + 1e-9) * 1e9));
    den = 1'000'000'000;
  }
  const BigInt step_den = den * BigInt(g.measured_degree());
  const double ratio = static_cast<double>(cpp_rational(num, step_den));

  MixingProfile out;
  out.exact = true;
  const BigInt n = g.vertex_count();
  ExactDistribution p = p0;
  BigInt env_num = 1, env_den = 1;  // ratio^(2i)
  BigInt prev_scaled, prev_q;
  for (std::size_t i = 0; i <= steps; ++i) {
    const BigInt scaled = scaled_square_distance(p);
    out.distance.push_back(exact_distance_value(scaled, p.weights.size(), p.denominator));
    out.envelope.push_back(std::pow(ratio, static_cast<double>(i)));
    // scaled / (N^2 Q^2) <= env_num / env_den
    const BigInt nq = n * p.denominator;
    if (scaled * env_den > nq * nq * env_num) {
      out.within_envelope = false;
      if (!out.first_violation) out.first_violation = i;
    }
    if (i > 0) {
      // scaled / Q^2 <= ratio^2 prev_scaled / prev_q^2
      if (scaled * prev_q * prev_q * step_den * step_den >
          num * num * prev_scaled * p.denominator * p.denominator) {
        out.contracts_stepwise = false;
      }
    }
    prev_scaled = scaled;
    prev_q = p.denominator;
    env_num *= num * num;
    env_den *= step_den * step_den;
    if (i < steps) step(g, p);
  }
  return out;
}

namespace {

struct WalkState {
  Element u;       // anchor endpoint
  std::size_t p;   // generator pair; the other endpoint is u + s'_p
};

class ImplicitWalker {
 public:
  ImplicitWalker(const Hypergraph3& h, int bucket_bits)
      : h_(h), s_(h.sidon().elements()), sums_(h.pair_sums()), t_(h.dimension()),
        bucket_bits_(bucket_bits) {}

  WalkState state_of(const Edge& e) const {
    check_element(e.u, t_);
    check_element(e.v, t_);
    const auto p = h_.pair_of_sum(e.u ^ e.v);
    if (!p) throw Error(ErrorCode::kInvalidInput, "start is not a skeleton edge");
    return {e.u, *p};
  }

  WalkState random_edge(std::mt19937_64& rng) const {
    const std::size_t p = bounded_draw(rng, sums_.size());
    const auto compressed = static_cast<Element>(bounded_draw(rng, group_order(t_ - 1)));
    return {expand(compressed, top_bit(p)), p};
  }

  WalkState advance(const WalkState& e, std::mt19937_64& rng) const {
    const std::size_t d = s_.size();
    const auto [i, j] = h_.pair_generators(e.p);
    const std::uint64_t r = bounded_draw(rng, 4 * (d - 2));
    // Centre x = u + s_i puts u at i and v at j; x = u + s_j swaps them.
    const bool second_center = (r & 1) != 0;
    const bool keep_v = (r & 2) != 0;
    std::size_t k = r >> 2;
    if (k >= i) ++k;
    if (k >= j) ++k;
    const std::size_t at_u = second_center ? j : i;
    const std::size_t at_v = second_center ? i : j;
    if (keep_v) return {e.u ^ sums_[e.p], h_.pair_index(at_v, k)};
    return {e.u, h_.pair_index(at_u, k)};
  }

  std::size_t bucket(const WalkState& e) const {
    const int hb = top_bit(e.p);
    const Element r = ((e.u >> hb) & 1) ? (e.u ^ sums_[e.p]) : e.u;
    const Element compressed = (r & ((Element{1} << hb) - 1)) | ((r >> (hb + 1)) << hb);
    return (e.p << bucket_bits_) + (compressed >> (t_ - 1 - bucket_bits_));
  }

 private:
  int top_bit(std::size_t p) const { return static_cast<int>(std::bit_width(sums_[p])) - 1; }

  static Element expand(Element compressed, int hb) {
    const Element low = compressed & ((Element{1} << hb) - 1);
    return low | ((compressed >> hb) << (hb + 1));
  }

  const Hypergraph3& h_;
  const std::vector<Element>& s_;
  const std::vector<Element>& sums_;
  int t_;
  int bucket_bits_;
};

}  // namespace

WalkHistogram monte_carlo_walk(const Hypergraph3& h, const MonteCarloOptions& opts) {
  const int t = h.dimension();
  if (t > kMaxImplicitWalkDimension) {
    throw Error(ErrorCode::kDimensionTooLarge, "implicit walks support t <= 24");
  }
  if (opts.trials == 0) throw Error(ErrorCode::kInvalidInput, "trials must be positive");
  const std::size_t pairs = h.pair_sums().size();
  int bits = opts.bucket_bits;
  if (bits < 0) {
    bits = t - 1;
    while (bits > 0 && (pairs << bits) > (std::size_t{1} << 20)) --bits;
  }
  if (bits > t - 1) throw Error(ErrorCode::kInvalidInput, "bucket_bits must be <= t - 1");

  WalkHistogram out;
  out.options = opts;
  out.bucket_bits = bits;
  const std::size_t buckets = pairs << bits;
  const ImplicitWalker walker(h, bits);
  const WalkState start = opts.start ? walker.state_of(*opts.start) : WalkState{0, 0};

  const std::size_t workers = std::max<std::size_t>(1, std::min(opts.workers, opts.trials));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(buckets, 0));
  auto run = [&](std::size_t worker) {
    const std::size_t begin = opts.trials * worker / workers;
    const std::size_t end = opts.trials * (worker + 1) / workers;
    for (std::size_t trial = begin; trial < end; ++trial) {
      std::mt19937_64 rng = substream(opts.seed, trial);
      WalkState e = opts.start ? start : walker.random_edge(rng);
      for (std::size_t s = 0; s < opts.steps; ++s) e = walker.advance(e, rng);
      ++partial[worker][walker.bucket(e)];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& th : threads) th.join();
  }
  out.counts.assign(buckets, 0);
  for (const auto& part : partial) {
    for (std::size_t b = 0; b < buckets; ++b) out.counts[b] += part[b];
  }

  const double trials = static_cast<double>(opts.trials);
  const double u = 1.0 / static_cast<double>(buckets);
  double tv = 0.0, mean_g = 0.0, mean_g2 = 0.0;
  for (std::uint64_t c : out.counts) {
    const double f = static_cast<double>(c) / trials;
    tv += std::abs(f - u);
    const double grad = f > u ? 0.5 : (f < u ? -0.5 : 0.0);
    mean_g += grad * f;
    mean_g2 += grad * grad * f;
  }
  out.tv_estimate = 0.5 * tv;
  out.tv_stderr = std::sqrt(std::max(0.0, mean_g2 - mean_g * mean_g) / trials);
  return out;
}

std::size_t walk_bucket(const Hypergraph3& h, const Edge& e, int bucket_bits) {
  if (bucket_bits < 0 || bucket_bits > h.dimension() - 1) {
    throw Error(ErrorCode::kInvalidInput, "bucket_bits must lie in [0, t - 1]");
  }
  const ImplicitWalker walker(h, bucket_bits);
  return walker.bucket(walker.state_of(e));
}

RapidMixingReport rapid_mixing_check(const Hypergraph3& h, std::size_t steps) {
  if (!h.materialized()) {
    throw Error(ErrorCode::kInvalidInput, "rapid mixing check requires a materialized build");
  }
  const AuxGraph g = AuxGraph::build(h);
  const AuxSpectralBounds bounds = aux_spectral_bounds(g);

  RapidMixingReport out;
  out.epsilon = spectrum(CayleyGraph(h.dimension(), h.sidon().elements())).epsilon();
  out.measured_degree = g.measured_degree();
  out.stated_degree = g.stated_degree();
  out.lambda_aux = bounds.lambda_aux;
  out.lambda_aux_ratio = bounds.ratio();
  out.steps = steps;

  // Single-edge start; exact arithmetic keeps small distances free of noise.
  const bool exact = g.vertex_count() <= kExactEvolutionMaxEdges;
  const MixingProfile profile =
      exact ? mixing_profile(g, exact_point_distribution(g.vertex_count(), 0), steps, bounds)
            : mixing_profile(g, point_distribution(g.vertex_count(), 0), steps, bounds);
  const double d0 = profile.distance.front();
  for (std::size_t i = 1; i < profile.distance.size(); ++i) {
    const double di = profile.distance[i];
    if (!exact && di < 1e-10) break;
    if (d0 > 0.0) {
      out.alpha_observed =
          std::max(out.alpha_observed, std::pow(di / d0, 1.0 / static_cast<double>(i)));
    }
  }
  out.certified = out.epsilon > Rational(0) && out.lambda_aux_ratio < 1.0 - 1e-12;
  if (out.epsilon > Rational(0)) {
    const double eps = boost::rational_cast<double>(out.epsilon);
    out.omega_constant = (1.0 - out.lambda_aux_ratio) / std::pow(eps, 4);
  }
  return out;
}

}  // namespace hyperexp
