#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately avoid the library's internal code paths: brute-force
// loops, rational arithmetic, and Monte Carlo quadrature.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sconv/grid_measure.hpp"
#include "sconv/matrix.hpp"
#include "sconv/rho_metric.hpp"

namespace oracle {

// Exact rational with long long parts; enough for small coarsening examples.
struct Fraction {
  long long num = 0;
  long long den = 1;

  static long long gcd_ll(long long a, long long b) {
    while (b != 0) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = gcd_ll(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Fraction operator+(const Fraction& o) const {
    Fraction r{num * o.den + o.num * den, den * o.den};
    r.reduce();
    return r;
  }
  Fraction operator*(const Fraction& o) const {
    Fraction r{num * o.num, den * o.den};
    r.reduce();
    return r;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Mass a k-resolution grid measure assigns to [x0,x1) x [y0,y1), computed
// from rectangle overlaps with each cell treated as uniformly spread.
inline double mass_on_rect(const sconv::GridMeasure& gm, double x0, double x1, double y0,
                           double y1) {
  int k = gm.resolution();
  double h = 1.0 / k;
  double out = 0.0;
  for (int i = 0; i < k; ++i) {
    double cx0 = i * h, cx1 = (i + 1) * h;
    double ox = std::min(x1, cx1) - std::max(x0, cx0);
    if (ox <= 0) continue;
    for (int j = 0; j < k; ++j) {
      double cy0 = j * h, cy1 = (j + 1) * h;
      double oy = std::min(y1, cy1) - std::max(y0, cy0);
      if (oy <= 0) continue;
      out += gm.masses()(i, j) * (ox / h) * (oy / h);
    }
  }
  return out;
}

// Coarsening oracle in exact rational arithmetic: the (r,s) cell of the
// K-resolution coarsening integrates the piecewise-constant density of the
// k-resolution measure over the coarse cell.
inline std::vector<std::vector<Fraction>> coarsen_exact(
    const std::vector<std::vector<Fraction>>& masses, int k, int K) {
  std::vector<std::vector<Fraction>> out(K, std::vector<Fraction>(K));
  for (int r = 0; r < K; ++r) {
    for (int s = 0; s < K; ++s) {
      Fraction acc;
      for (int i = 0; i < k; ++i) {
        long long nx = std::min<long long>((i + 1) * (long long)K, (r + 1) * (long long)k) -
                       std::max<long long>(i * (long long)K, r * (long long)k);
        if (nx <= 0) continue;
        for (int j = 0; j < k; ++j) {
          long long ny = std::min<long long>((j + 1) * (long long)K, (s + 1) * (long long)k) -
                         std::max<long long>(j * (long long)K, s * (long long)k);
          if (ny <= 0) continue;
          // density k^2 * m(i,j), integrated over overlap (nx*ny)/(kK)^2
          Fraction term{nx * ny, (long long)k * K * (long long)k * K};
          term = term * Fraction{(long long)k * k, 1};
          acc = acc + term * masses[i][j];
        }
      }
      out[r][s] = acc;
    }
  }
  return out;
}

// Triple-loop pushforward: Phi(a,b) = sum_{i,j} S(i,a) S(j,b) M~(i,j) where
// M~ is the measure refined to the weights' row count.
inline sconv::Matrix pushforward_bruteforce(const sconv::Matrix& masses_refined,
                                            const sconv::Matrix& weights) {
  int m = (int)weights.rows;
  int k = (int)weights.cols;
  sconv::Matrix phi(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) acc += weights(i, a) * weights(j, b) * masses_refined(i, j);
      phi(a, b) = acc;
    }
  return phi;
}

// Monte Carlo integral of a test function against a grid measure.
inline double mc_integral(const sconv::GridMeasure& gm, const sconv::RhoMetric::TestFunction& f,
                          std::uint64_t seed, std::size_t samples) {
  // xorshift-based generator independent of the library RNG
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
  auto next = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  auto unif = [&]() { return (next() >> 11) * 0x1.0p-53; };
  int k = gm.resolution();
  double acc = 0.0;
  auto hat = [](int level, int node, double x) {
    double t = 1.0 - std::abs(x * (double)(1 << level) - node);
    return t > 0 ? t : 0.0;
  };
  for (std::size_t n = 0; n < samples; ++n) {
    double x = unif(), y = unif();
    int i = std::min<int>((int)(x * k), k - 1);
    int j = std::min<int>((int)(y * k), k - 1);
    double density = gm.masses()(i, j) * k * k;
    double val;
    if (f.level == 0)
      val = 1.0;
    else
      val = hat(f.level, f.a, x) * hat(f.level, f.b, y);
    acc += density * val;
  }
  return acc / (double)samples;
}

// Naive directed/symmetric Hausdorff over precomputed pairwise distances.
inline double hausdorff_from_pairs(const std::vector<std::vector<double>>& d) {
  std::size_t na = d.size(), nb = d[0].size();
  double ab = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double best = d[i][0];
    for (std::size_t j = 1; j < nb; ++j) best = std::min(best, d[i][j]);
    ab = std::max(ab, best);
  }
  double ba = 0.0;
  for (std::size_t j = 0; j < nb; ++j) {
    double best = d[0][j];
    for (std::size_t i = 1; i < na; ++i) best = std::min(best, d[i][j]);
    ba = std::max(ba, best);
  }
  return std::max(ab, ba);
}

}  // namespace oracle
