#pragma once

#include <cstdint>
#include <vector>

#include "sconv/grid_measure.hpp"
#include "sconv/matrix.hpp"

namespace sconv {

// Fairly distributed step kernel at resolution m: the kernel value on cell
// I_i x I_j is m * S(i, j) where S is doubly stochastic. Row and column sums
// must be 1 within 1e-10.
class FDKernel {
 public:
  explicit FDKernel(Matrix weights);

  int resolution() const { return static_cast<int>(weights_.rows); }
  const Matrix& weights() const { return weights_; }

 private:
  Matrix weights_;
};

// Fractional partition of the m-cell grid into k parts: nonnegative m x k
// matrix with row sums 1 (within 1e-10) and column sums m/k (within 1e-10*m).
class FractionalPartition {
 public:
  explicit FractionalPartition(Matrix weights);

  int rows() const { return static_cast<int>(weights_.rows); }
  int parts() const { return static_cast<int>(weights_.cols); }
  const Matrix& weights() const { return weights_; }

  static FractionalPartition flat(int m, int k);

 private:
  Matrix weights_;
};

// Pushforward measure: refine kernel and measure to the lcm resolution L
// (guarded at kMaxResolution), then cell masses = Sᵀ M S. Total mass 1,
// symmetric.
GridMeasure pushforward(const FDKernel& f, const GridMeasure& m);

// Quotient matrix Q = Pᵀ M P; member of M_k^* (symmetric, nonnegative,
// entries summing to 1). Requires p.rows() == m.resolution().
Matrix quotient(const FractionalPartition& p, const GridMeasure& m);

// An m x m doubly stochastic matrix is a fractional partition with k = m;
// quotient through the bridge reproduces the pushforward masses bitwise.
FractionalPartition kernel_to_partition(const FDKernel& f);

// Sinkhorn scaling of entrywise-exponentiated Gaussian noise. Deterministic
// given (m, seed, draw); throws NonConvergence after 10000 sweeps.
FDKernel sample_doubly_stochastic(int m, std::uint64_t seed,
                                  std::uint64_t draw = 0);

enum class PartitionMode { soft, hard };

// soft: alternating scaling of positive noise to the partition constraints.
// hard: uniformly random balanced 0/1 assignment; requires k | m.
FractionalPartition sample_fractional_partition(int m, int k,
                                                std::uint64_t seed,
                                                PartitionMode mode,
                                                std::uint64_t draw = 0);

// Number of balanced hard assignments of m rows into k labeled parts,
// saturating at cap + 1.
long long count_hard_partitions(int m, int k, long long cap);

// All balanced assignments in lexicographic order; caller must check the
// count against the cap first.
std::vector<Matrix> enumerate_hard_partitions(int m, int k);

}  // namespace sconv
