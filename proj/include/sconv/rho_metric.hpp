#pragma once

#include <vector>

#include "sconv/grid_measure.hpp"

namespace sconv {

// Truncated weak-topology metric
//
//   rho(a, b) = sum_{j=1}^{J} 2^{-j} | int h_j da - int h_j db |
//
// over a fixed enumeration of test functions with values in [0, 1]:
// h_1 == 1, then for levels L = 1, 2, ... the tensor products
// phi_{L,a}(x) * phi_{L,b}(y) of one-dimensional hat functions on the dyadic
// grid with 2^L + 1 nodes, ordered by (L, a, b) lexicographically. The
// enumeration is reproducible from the depth alone; distances computed with
// different families are not comparable. The discarded tail contributes at
// most 2^-J, reported as tail_bound().
//
// Integrals against grid measures are closed-form: over each intersection
// rectangle of a measure cell with a bilinearity cell of h_j, the density is
// constant and the mean of a bilinear function is its center value.
class RhoMetric {
 public:
  explicit RhoMetric(int depth = 64);

  int depth() const { return depth_; }
  double tail_bound() const;

  // level == 0 encodes the constant-1 function; otherwise the hat pair
  // (level, a, b) with 0 <= a, b <= 2^level.
  struct TestFunction {
    int level;
    int a;
    int b;
  };
  TestFunction function_at(int j) const;  // 1-based, throws out of range

  // Exact integral of h_j against the measure; value in [0, 1].
  double integrate(const GridMeasure& m, int j) const;

  // All depth integrals at once (evaluated in parallel, order-independent).
  std::vector<double> profile(const GridMeasure& m) const;

  double distance(const GridMeasure& a, const GridMeasure& b) const;
  double distance_from_profiles(const std::vector<double>& a,
                                const std::vector<double>& b) const;

 private:
  int depth_;
};

inline double rho_distance(const GridMeasure& a, const GridMeasure& b,
                           const RhoMetric& metric) {
  return metric.distance(a, b);
}

inline double integrate_test_function(const GridMeasure& m, int j,
                                      const RhoMetric& metric) {
  return metric.integrate(m, j);
}

}  // namespace sconv
