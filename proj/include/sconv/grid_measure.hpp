#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sconv/matrix.hpp"

namespace sconv {

// Largest grid resolution any operation will produce. Callers must
// pre-coarsen before combining measures whose common resolution would
// exceed it.
inline constexpr int kMaxResolution = 4096;

// Simple undirected graph, 1-based vertices, no self-loops.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // perm is 0-based: old vertex i+1 becomes perm[i]+1.
  Graph permuted(const std::vector<int>& perm) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// A step s-graphon: uniform density on each cell of a k-by-k grid, stored as
// the matrix of cell masses. Symmetric, nonnegative, total mass 1.
// Cells are half-open, the last one closed: I_i = [(i-1)/k, i/k), I_k ends
// closed at 1; boundaries carry no mass so this only pins down determinism.
class GridMeasure {
 public:
  // Validates shape, nonnegativity and symmetry (entrywise 1e-12, then
  // symmetrized exactly). A total mass within 1e-9 of 1 is renormalized,
  // anything further off is rejected.
  explicit GridMeasure(Matrix masses);

  static GridMeasure uniform(int k);

  int resolution() const { return static_cast<int>(masses_.rows); }
  const Matrix& masses() const { return masses_; }
  double mass(int i, int j) const { return masses_(i, j); }

  // Density of the underlying measure inside cell (i, j): k^2 * mass.
  double density(int i, int j) const {
    const double k = static_cast<double>(masses_.rows);
    return masses_(i, j) * k * k;
  }

 private:
  Matrix masses_;
};

// Normalized adjacency embedding: masses = A_G / ||A_G||_l1.
// Throws EmptyEdgeSet when the graph has no edges.
GridMeasure embed_graph(const Graph& g);

// Splits every cell into r x r equal subcells. Represents the same measure.
GridMeasure refine(const GridMeasure& m, int r);

// Coarsening to an arbitrary resolution K via exact rational interval
// intersections; the output assigns to every K-grid cell exactly the mass the
// input measure carries there. K = k returns the input unchanged.
GridMeasure coarsen(const GridMeasure& m, int K);

}  // namespace sconv
