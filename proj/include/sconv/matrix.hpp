#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sconv/errors.hpp"

namespace sconv {

// Dense row-major matrix of doubles. Small and value-semantic; everything in
// the project that is "a matrix" (cell masses, kernels, partitions, quotient
// points) is one of these.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  bool operator==(const Matrix& other) const = default;
};

// Permutation-invariant accumulation of doubles in roughly [-2, 2].
//
// Terms are quantized to 2^-96 fixed point and summed in a 128-bit integer,
// which is exact, so the result does not depend on the order of addition.
// The spec's equivariance identities ("quotient of a relabelled graph equals
// the relabelled quotient, exactly") reduce to reordering the terms of these
// sums, so ordinary floating-point accumulation would not satisfy them.
class FixedSum {
 public:
  void add(double x) {
    acc_ += static_cast<__int128>(static_cast<long double>(x) * kScale);
  }
  double value() const {
    return static_cast<double>(static_cast<long double>(acc_) * kInvScale);
  }

 private:
  static constexpr long double kScale = 0x1.0p96L;
  static constexpr long double kInvScale = 0x1.0p-96L;
  __int128 acc_ = 0;
};

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

inline Matrix multiply_exact(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw DimensionMismatch("matrix product shape mismatch");
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      FixedSum s;
      for (std::size_t t = 0; t < a.cols; ++t) s.add(a(i, t) * b(t, j));
      out(i, j) = s.value();
    }
  }
  return out;
}

// aᵀ · center · a with permutation-invariant accumulation. Used by both the
// quotient and the pushforward so the kernel/partition bridge agrees bitwise.
inline Matrix sandwich(const Matrix& a, const Matrix& center) {
  if (center.rows != center.cols || center.rows != a.rows)
    throw DimensionMismatch("sandwich shape mismatch");
  const Matrix t = multiply_exact(center, a);  // rows x cols(a)
  Matrix out(a.cols, a.cols);
  for (std::size_t i = 0; i < a.cols; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      FixedSum s;
      for (std::size_t r = 0; r < a.rows; ++r) s.add(a(r, i) * t(r, j));
      out(i, j) = s.value();
    }
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw DimensionMismatch("matrix difference shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    d = std::max(d, std::fabs(a.data[i] - b.data[i]));
  return d;
}

inline double total(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data) s += v;
  return s;
}

inline double max_asymmetry(const Matrix& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j)
      d = std::max(d, std::fabs(a(i, j) - a(j, i)));
  return d;
}

}  // namespace sconv
