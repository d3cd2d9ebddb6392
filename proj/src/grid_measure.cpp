#include "sconv/grid_measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sconv/errors.hpp"

namespace sconv {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw DomainError("graph needs at least one vertex");
  for (auto& [u, v] : edges_) {
    if (u < 1 || u > n_ || v < 1 || v > n_)
      throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph Graph::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw DomainError("permutation size does not match vertex count");
  std::vector<std::pair<int, int>> relabelled;
  relabelled.reserve(edges_.size());
  for (const auto& [u, v] : edges_)
    relabelled.emplace_back(perm[u - 1] + 1, perm[v - 1] + 1);
  return Graph(n_, std::move(relabelled));
}

GridMeasure::GridMeasure(Matrix masses) : masses_(std::move(masses)) {
  if (masses_.rows == 0 || masses_.rows != masses_.cols)
    throw DomainError("grid measure masses must be a nonempty square matrix");
  if (masses_.rows > static_cast<std::size_t>(kMaxResolution))
    throw ResolutionGuard("grid resolution exceeds " +
                          std::to_string(kMaxResolution));
  for (double v : masses_.data)
    if (!(v >= 0.0)) throw DomainError("cell masses must be nonnegative");
  if (max_asymmetry(masses_) > 1e-12)
    throw DomainError("cell masses must be symmetric");
  for (std::size_t i = 0; i < masses_.rows; ++i)
    for (std::size_t j = i + 1; j < masses_.cols; ++j) {
      const double avg = 0.5 * (masses_(i, j) + masses_(j, i));
      masses_(i, j) = avg;
      masses_(j, i) = avg;
    }
  // order-invariant total so permuted inputs renormalize identically
  FixedSum mass_sum;
  for (double v : masses_.data) mass_sum.add(v);
  const double mass = mass_sum.value();
  if (std::fabs(mass - 1.0) > 1e-9)
    throw DomainError("total mass deviates from 1 by more than 1e-9");
  if (mass != 1.0)
    for (double& v : masses_.data) v /= mass;
}

GridMeasure GridMeasure::uniform(int k) {
  if (k < 1) throw DomainError("resolution must be positive");
  const double cell = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  return GridMeasure(Matrix(static_cast<std::size_t>(k),
                            static_cast<std::size_t>(k), cell));
}

GridMeasure embed_graph(const Graph& g) {
  if (g.edges().empty()) throw EmptyEdgeSet();
  const int n = g.vertex_count();
  Matrix masses(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  const double w = 1.0 / (2.0 * static_cast<double>(g.edges().size()));
  for (const auto& [u, v] : g.edges()) {
    masses(u - 1, v - 1) = w;
    masses(v - 1, u - 1) = w;
  }
  return GridMeasure(std::move(masses));
}

GridMeasure refine(const GridMeasure& m, int r) {
  if (r < 1) throw DomainError("refinement factor must be positive");
  if (r == 1) return m;
  const int k = m.resolution();
  if (static_cast<long long>(k) * r > kMaxResolution)
    throw ResolutionGuard("refinement would exceed resolution " +
                          std::to_string(kMaxResolution));
  const std::size_t kk = static_cast<std::size_t>(k) * r;
  Matrix out(kk, kk);
  const double split = 1.0 / (static_cast<double>(r) * static_cast<double>(r));
  for (std::size_t a = 0; a < kk; ++a)
    for (std::size_t b = 0; b < kk; ++b)
      out(a, b) = m.mass(static_cast<int>(a / r), static_cast<int>(b / r)) * split;
  return GridMeasure(std::move(out));
}

GridMeasure coarsen(const GridMeasure& m, int K) {
  if (K < 1) throw DomainError("target resolution must be positive");
  if (K > kMaxResolution)
    throw ResolutionGuard("target resolution exceeds " +
                          std::to_string(kMaxResolution));
  const int k = m.resolution();
  if (K == k) return m;

  // alpha(i, r) = lambda(I_i^k ∩ I_r^K) = overlap(i, r) / (k K) with the
  // integer overlap below; all weights stay exact in double.
  const long long lk = k, lK = K;
  std::vector<std::vector<std::pair<int, long long>>> overlaps(
      static_cast<std::size_t>(K));
  for (int r = 0; r < K; ++r) {
    for (long long i = lk * r / lK; i < k; ++i) {
      const long long lo = std::max(i * lK, static_cast<long long>(r) * lk);
      const long long hi =
          std::min((i + 1) * lK, (static_cast<long long>(r) + 1) * lk);
      if (hi <= lo) break;
      overlaps[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(i),
                                                         hi - lo);
    }
  }

  const double k2 = static_cast<double>(lk) * static_cast<double>(lk);
  const double denom =
      static_cast<double>(lk) * static_cast<double>(lK) * static_cast<double>(lk) *
      static_cast<double>(lK);
  Matrix out(static_cast<std::size_t>(K), static_cast<std::size_t>(K));
  for (int r = 0; r < K; ++r) {
    for (int s = r; s < K; ++s) {
      double acc = 0.0;
      for (const auto& [i, ni] : overlaps[static_cast<std::size_t>(r)])
        for (const auto& [j, nj] : overlaps[static_cast<std::size_t>(s)])
          acc += (k2 * static_cast<double>(ni) * static_cast<double>(nj)) *
                 m.mass(i, j);
      const double value = acc / denom;
      out(r, s) = value;
      out(s, r) = value;
    }
  }
  return GridMeasure(std::move(out));
}

}  // namespace sconv
