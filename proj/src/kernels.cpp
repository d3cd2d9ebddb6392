#include "sconv/kernels.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sconv/errors.hpp"
#include "sconv/rng.hpp"

namespace sconv {

namespace {

constexpr int kMaxSweeps = 10000;
constexpr double kScalingTolerance = 1e-13;

double max_row_deviation(const Matrix& w, double target) {
  double dev = 0.0;
  for (std::size_t i = 0; i < w.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.cols; ++j) s += w(i, j);
    dev = std::max(dev, std::fabs(s - target));
  }
  return dev;
}

double max_col_deviation(const Matrix& w, double target) {
  double dev = 0.0;
  for (std::size_t j = 0; j < w.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.rows; ++i) s += w(i, j);
    dev = std::max(dev, std::fabs(s - target));
  }
  return dev;
}

void normalize_rows(Matrix& w, double target) {
  for (std::size_t i = 0; i < w.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.cols; ++j) s += w(i, j);
    const double scale = target / s;
    for (std::size_t j = 0; j < w.cols; ++j) w(i, j) *= scale;
  }
}

void normalize_cols(Matrix& w, double target) {
  for (std::size_t j = 0; j < w.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.rows; ++i) s += w(i, j);
    const double scale = target / s;
    for (std::size_t i = 0; i < w.rows; ++i) w(i, j) *= scale;
  }
}

// Alternating scaling to row sums `row_target` and column sums `col_target`.
// The relative deviation must drop below kScalingTolerance; a final row
// normalization then makes the row constraint exact up to one rounding.
Matrix scale_to_margins(Matrix w, double row_target, double col_target) {
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    normalize_rows(w, row_target);
    normalize_cols(w, col_target);
    const double dev =
        std::max(max_row_deviation(w, row_target) / row_target,
                 max_col_deviation(w, col_target) / col_target);
    if (dev < kScalingTolerance) {
      normalize_rows(w, row_target);
      return w;
    }
  }
  throw NonConvergence("alternating scaling did not reach tolerance in " +
                       std::to_string(kMaxSweeps) + " sweeps");
}

Matrix positive_noise(std::size_t rows, std::size_t cols, std::uint64_t seed,
                      std::uint64_t draw) {
  RngStream stream(seed, draw);
  Matrix w(rows, cols);
  for (double& v : w.data) v = std::exp(stream.gaussian());
  return w;
}

}  // namespace

FDKernel::FDKernel(Matrix weights) : weights_(std::move(weights)) {
  if (weights_.rows == 0 || weights_.rows != weights_.cols)
    throw DomainError("kernel weights must be a nonempty square matrix");
  for (double v : weights_.data)
    if (!(v >= 0.0)) throw DomainError("kernel weights must be nonnegative");
  if (max_row_deviation(weights_, 1.0) > 1e-10 ||
      max_col_deviation(weights_, 1.0) > 1e-10)
    throw DomainError("kernel weights must be doubly stochastic within 1e-10");
}

FractionalPartition::FractionalPartition(Matrix weights)
    : weights_(std::move(weights)) {
  if (weights_.rows == 0 || weights_.cols == 0)
    throw DomainError("partition weights must be nonempty");
  for (double v : weights_.data)
    if (!(v >= 0.0)) throw DomainError("partition weights must be nonnegative");
  const double m = static_cast<double>(weights_.rows);
  const double k = static_cast<double>(weights_.cols);
  if (max_row_deviation(weights_, 1.0) > 1e-10)
    throw DomainError("partition row sums must be 1 within 1e-10");
  if (max_col_deviation(weights_, m / k) > 1e-10 * m)
    throw DomainError("partition column sums must be m/k within 1e-10*m");
}

FractionalPartition FractionalPartition::flat(int m, int k) {
  if (m < 1 || k < 1) throw DomainError("partition dimensions must be positive");
  return FractionalPartition(Matrix(static_cast<std::size_t>(m),
                                    static_cast<std::size_t>(k),
                                    1.0 / static_cast<double>(k)));
}

namespace {

// Kernel refinement splits each entry into an r x r sub-block of S(i,j)/r,
// which preserves double stochasticity.
Matrix refine_kernel(const Matrix& s, int r) {
  if (r == 1) return s;
  const std::size_t m = s.rows;
  Matrix out(m * static_cast<std::size_t>(r), m * static_cast<std::size_t>(r));
  const double inv = 1.0 / static_cast<double>(r);
  for (std::size_t a = 0; a < out.rows; ++a)
    for (std::size_t b = 0; b < out.cols; ++b)
      out(a, b) = s(a / static_cast<std::size_t>(r),
                    b / static_cast<std::size_t>(r)) *
                  inv;
  return out;
}

}  // namespace

GridMeasure pushforward(const FDKernel& f, const GridMeasure& m) {
  const long long km = m.resolution();
  const long long ks = f.resolution();
  const long long common = std::lcm(km, ks);
  if (common > kMaxResolution)
    throw ResolutionGuard(
        "common resolution " + std::to_string(common) + " exceeds " +
        std::to_string(kMaxResolution) + "; pre-coarsen the inputs");
  const GridMeasure refined = refine(m, static_cast<int>(common / km));
  const Matrix s = refine_kernel(f.weights(), static_cast<int>(common / ks));
  return GridMeasure(sandwich(s, refined.masses()));
}

Matrix quotient(const FractionalPartition& p, const GridMeasure& m) {
  if (p.rows() != m.resolution())
    throw ResolutionMismatch("partition rows " + std::to_string(p.rows()) +
                             " do not match measure resolution " +
                             std::to_string(m.resolution()));
  return sandwich(p.weights(), m.masses());
}

FractionalPartition kernel_to_partition(const FDKernel& f) {
  return FractionalPartition(f.weights());
}

FDKernel sample_doubly_stochastic(int m, std::uint64_t seed,
                                  std::uint64_t draw) {
  if (m < 1) throw DomainError("kernel resolution must be positive");
  Matrix w = positive_noise(static_cast<std::size_t>(m),
                            static_cast<std::size_t>(m), seed, draw);
  return FDKernel(scale_to_margins(std::move(w), 1.0, 1.0));
}

FractionalPartition sample_fractional_partition(int m, int k,
                                                std::uint64_t seed,
                                                PartitionMode mode,
                                                std::uint64_t draw) {
  if (m < 1 || k < 1) throw DomainError("partition dimensions must be positive");
  if (mode == PartitionMode::hard) {
    if (m % k != 0)
      throw HardModeInfeasible("hard partitions need k | m; got m = " +
                               std::to_string(m) + ", k = " + std::to_string(k));
    RngStream stream(seed, draw);
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(
          stream.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    const int group = m / k;
    Matrix w(static_cast<std::size_t>(m), static_cast<std::size_t>(k));
    for (int pos = 0; pos < m; ++pos)
      w(static_cast<std::size_t>(order[static_cast<std::size_t>(pos)]),
        static_cast<std::size_t>(pos / group)) = 1.0;
    return FractionalPartition(std::move(w));
  }
  if (k == 1)
    return FractionalPartition(
        Matrix(static_cast<std::size_t>(m), 1, 1.0));
  Matrix w = positive_noise(static_cast<std::size_t>(m),
                            static_cast<std::size_t>(k), seed, draw);
  return FractionalPartition(scale_to_margins(
      std::move(w), 1.0, static_cast<double>(m) / static_cast<double>(k)));
}

long long count_hard_partitions(int m, int k, long long cap) {
  if (m < 1 || k < 1 || m % k != 0) return 0;
  const int group = m / k;
  // Product of binomials C(m, g) C(m-g, g) ...; saturate early.
  long double count = 1.0L;
  int remaining = m;
  for (int part = 0; part < k; ++part) {
    for (int t = 0; t < group; ++t) {
      count *= static_cast<long double>(remaining - t);
      count /= static_cast<long double>(t + 1);
    }
    remaining -= group;
    if (count > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<long long>(std::llroundl(count));
}

namespace {

void enumerate_rec(int m, int k, int row, std::vector<int>& capacity,
                   std::vector<int>& assignment, std::vector<Matrix>& out) {
  if (row == m) {
    Matrix w(static_cast<std::size_t>(m), static_cast<std::size_t>(k));
    for (int t = 0; t < m; ++t)
      w(static_cast<std::size_t>(t),
        static_cast<std::size_t>(assignment[static_cast<std::size_t>(t)])) = 1.0;
    out.push_back(std::move(w));
    return;
  }
  for (int part = 0; part < k; ++part) {
    if (capacity[static_cast<std::size_t>(part)] == 0) continue;
    --capacity[static_cast<std::size_t>(part)];
    assignment[static_cast<std::size_t>(row)] = part;
    enumerate_rec(m, k, row + 1, capacity, assignment, out);
    ++capacity[static_cast<std::size_t>(part)];
  }
}

}  // namespace

std::vector<Matrix> enumerate_hard_partitions(int m, int k) {
  if (m < 1 || k < 1 || m % k != 0)
    throw HardModeInfeasible("hard partitions need k | m");
  std::vector<int> capacity(static_cast<std::size_t>(k), m / k);
  std::vector<int> assignment(static_cast<std::size_t>(m), 0);
  std::vector<Matrix> out;
  enumerate_rec(m, k, 0, capacity, assignment, out);
  return out;
}

}  // namespace sconv
