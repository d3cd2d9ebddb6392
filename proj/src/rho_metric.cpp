#include "sconv/rho_metric.hpp"

#include <cmath>
#include <string>

#include "sconv/errors.hpp"

namespace sconv {

namespace {

// Hat value phi_{L,a}(x) on the dyadic grid with spacing 1/2^L.
double hat(int level, int node, double x) {
  const double t = x * static_cast<double>(1 << level) - static_cast<double>(node);
  return std::max(0.0, 1.0 - std::fabs(t));
}

}  // namespace

RhoMetric::RhoMetric(int depth) : depth_(depth) {
  if (depth < 1 || depth > 1024)
    throw DomainError("metric depth must be in [1, 1024]");
}

double RhoMetric::tail_bound() const { return std::ldexp(1.0, -depth_); }

RhoMetric::TestFunction RhoMetric::function_at(int j) const {
  if (j < 1 || j > depth_)
    throw DomainError("test function index " + std::to_string(j) +
                      " out of range [1, " + std::to_string(depth_) + "]");
  if (j == 1) return {0, 0, 0};
  long long idx = j - 2;
  for (int level = 1;; ++level) {
    const long long nodes = (1LL << level) + 1;
    const long long count = nodes * nodes;
    if (idx < count)
      return {level, static_cast<int>(idx / nodes), static_cast<int>(idx % nodes)};
    idx -= count;
  }
}

double RhoMetric::integrate(const GridMeasure& m, int j) const {
  const TestFunction h = function_at(j);
  if (h.level == 0) return total(m.masses());

  const long long n = 1LL << h.level;  // bilinearity cells per axis
  const long long k = m.resolution();
  double value = 0.0;
  for (long long cx = std::max(0LL, static_cast<long long>(h.a) - 1);
       cx < std::min(n, static_cast<long long>(h.a) + 1); ++cx) {
    for (long long cy = std::max(0LL, static_cast<long long>(h.b) - 1);
         cy < std::min(n, static_cast<long long>(h.b) + 1); ++cy) {
      // Measure cells overlapping the bilinearity cell; geometry kept in
      // integers over the common grid n*k.
      for (long long i = cx * k / n; i < k; ++i) {
        const long long xlo = std::max(cx * k, i * n);
        const long long xhi = std::min((cx + 1) * k, (i + 1) * n);
        if (xhi <= xlo) break;
        const double wx = static_cast<double>(xhi - xlo) /
                          static_cast<double>(n * k);
        const double xc = static_cast<double>(xlo + xhi) /
                          (2.0 * static_cast<double>(n * k));
        const double hx = hat(h.level, h.a, xc);
        for (long long jj = cy * k / n; jj < k; ++jj) {
          const long long ylo = std::max(cy * k, jj * n);
          const long long yhi = std::min((cy + 1) * k, (jj + 1) * n);
          if (yhi <= ylo) break;
          const double wy = static_cast<double>(yhi - ylo) /
                            static_cast<double>(n * k);
          const double yc = static_cast<double>(ylo + yhi) /
                            (2.0 * static_cast<double>(n * k));
          value += m.density(static_cast<int>(i), static_cast<int>(jj)) * wx *
                   wy * hx * hat(h.level, h.b, yc);
        }
      }
    }
  }
  return value;
}

std::vector<double> RhoMetric::profile(const GridMeasure& m) const {
  // Serial on purpose: callers parallelize across measures, and each value
  // lands in its own slot anyway.
  std::vector<double> values(static_cast<std::size_t>(depth_));
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = integrate(m, static_cast<int>(i) + 1);
  return values;
}

double RhoMetric::distance_from_profiles(const std::vector<double>& a,
                                         const std::vector<double>& b) const {
  if (a.size() != static_cast<std::size_t>(depth_) || a.size() != b.size())
    throw DimensionMismatch("profile length does not match metric depth");
  double d = 0.0;
  for (int j = depth_; j >= 1; --j)
    d += std::ldexp(std::fabs(a[static_cast<std::size_t>(j - 1)] -
                              b[static_cast<std::size_t>(j - 1)]),
                    -j);
  return d;
}

double RhoMetric::distance(const GridMeasure& a, const GridMeasure& b) const {
  return distance_from_profiles(profile(a), profile(b));
}

}  // namespace sconv
