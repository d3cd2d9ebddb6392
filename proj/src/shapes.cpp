#include "sconv/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sconv/errors.hpp"
#include "sconv/parallel.hpp"
#include "sconv/rng.hpp"

namespace sconv {

namespace {

constexpr double kDedupTolerance = 1e-12;

void check_mkstar(const Matrix& q, int k) {
  if (q.rows != static_cast<std::size_t>(k) || q.cols != q.rows)
    throw DimensionMismatch("cloud point has wrong dimensions");
  for (double v : q.data)
    if (!(v >= 0.0)) throw DomainError("cloud point has negative entries");
  if (max_asymmetry(q) > 1e-12)
    throw DomainError("cloud point is not symmetric");
  if (std::fabs(total(q) - 1.0) > 1e-9)
    throw DomainError("cloud point entries do not sum to 1");
}

// Draw counters never collide across (refine level, candidate class, index).
std::uint64_t draw_counter(int r, int mode, std::uint64_t index) {
  return (static_cast<std::uint64_t>(r) << 48) |
         (static_cast<std::uint64_t>(mode) << 44) | index;
}

// Interval partition: part a receives from row i the overlap of cell
// [i/rows, (i+1)/rows) with [a/k, (a+1)/k), scaled to row sums 1. Its
// quotient is exactly the K-coarsening of the measure, the partition the
// regularity lemma's recipe is built on.
Matrix interval_partition(int rows, int k) {
  Matrix p(static_cast<std::size_t>(rows), static_cast<std::size_t>(k));
  for (long long i = 0; i < rows; ++i)
    for (long long a = 0; a < k; ++a) {
      const long long overlap = std::max<long long>(
          0, std::min((i + 1) * k, (a + 1) * static_cast<long long>(rows)) -
                 std::max(i * k, a * static_cast<long long>(rows)));
      p(static_cast<std::size_t>(i), static_cast<std::size_t>(a)) =
          static_cast<double>(overlap) / static_cast<double>(k);
    }
  return p;
}

Matrix permute_rows(const Matrix& p, const std::vector<int>& perm) {
  Matrix out(p.rows, p.cols);
  for (std::size_t t = 0; t < p.rows; ++t)
    for (std::size_t c = 0; c < p.cols; ++c)
      out(static_cast<std::size_t>(perm[t]), c) = p(t, c);
  return out;
}

// Lift a base-resolution cell permutation to the r-fold refined grid:
// refined row t sits inside base cell t/r.
std::vector<int> lift_permutation(const std::vector<int>& perm, int r) {
  std::vector<int> lifted(perm.size() * static_cast<std::size_t>(r));
  for (std::size_t t = 0; t < lifted.size(); ++t)
    lifted[t] = perm[t / static_cast<std::size_t>(r)] * r +
                static_cast<int>(t % static_cast<std::size_t>(r));
  return lifted;
}

}  // namespace

KShapeCloud::KShapeCloud(int k) : k_(k) {
  if (k < 1) throw DomainError("k must be positive");
}

bool KShapeCloud::contains(const Matrix& point, double tol) const {
  const double first = point.data.empty() ? 0.0 : point.data.front();
  auto lo = std::lower_bound(
      by_first_.begin(), by_first_.end(), first - tol,
      [&](std::size_t idx, double v) { return points_[idx].data.front() < v; });
  for (auto it = lo; it != by_first_.end() &&
                     points_[*it].data.front() <= first + tol;
       ++it) {
    if (max_abs_diff(points_[*it], point) < tol) return true;
  }
  return false;
}

bool KShapeCloud::insert(Matrix point, PointProvenance prov) {
  check_mkstar(point, k_);
  if (contains(point, kDedupTolerance)) return false;
  const double first = point.data.front();
  auto pos = std::lower_bound(
      by_first_.begin(), by_first_.end(), first,
      [&](std::size_t idx, double v) { return points_[idx].data.front() < v; });
  points_.push_back(std::move(point));
  provenance_.push_back(std::move(prov));
  by_first_.insert(pos, points_.size() - 1);
  return true;
}

KShapeCloud build_kshape(const GridMeasure& m, int k, const CloudBudget& budget,
                         std::uint64_t seed,
                         const std::vector<int>& row_permutation) {
  if (k < 1 || budget.max_refine < 1 || budget.samples < 1)
    throw DomainError("k, max_refine and samples must all be positive");
  if (!row_permutation.empty() &&
      static_cast<int>(row_permutation.size()) != m.resolution())
    throw DomainError("row permutation does not match measure resolution");

  KShapeCloud cloud(k);
  for (int r = 1; r <= budget.max_refine; ++r) {
    const long long rows_ll = static_cast<long long>(m.resolution()) * r;
    if (rows_ll > kMaxResolution)
      throw ResolutionGuard("refinement level " + std::to_string(r) +
                            " exceeds resolution " +
                            std::to_string(kMaxResolution));
    const int rows = static_cast<int>(rows_ll);
    const GridMeasure refined = refine(m, r);
    const std::vector<int> perm =
        row_permutation.empty() ? std::vector<int>{}
                                : lift_permutation(row_permutation, r);
    auto apply_perm = [&](Matrix p) {
      return perm.empty() ? p : permute_rows(p, perm);
    };

    // Candidate partitions at this level, in a fixed order: flat, hard, soft.
    std::vector<Matrix> partitions;
    std::vector<PointProvenance> provs;
    partitions.push_back(
        apply_perm(FractionalPartition::flat(rows, k).weights()));
    provs.push_back({k, r, "flat", 0, seed});
    partitions.push_back(apply_perm(interval_partition(rows, k)));
    provs.push_back({k, r, "interval", 0, seed});

    // Hard groupings at divisor sizes k' composed with the interval map
    // k' -> k. The quotient by H·I is the K-coarsening of the quotient by H,
    // so these cover the hard points of clouds built at other sizes — the
    // regularity lemma's approximation applied to each of them.
    for (int kp = 2; kp <= rows; ++kp) {
      if (kp == k || rows % kp != 0) continue;
      if (count_hard_partitions(rows, kp, budget.hard_cap) > budget.hard_cap)
        continue;
      const Matrix coarse = interval_partition(kp, k);
      const auto groups = enumerate_hard_partitions(rows, kp);
      for (std::size_t idx = 0; idx < groups.size(); ++idx) {
        Matrix p(static_cast<std::size_t>(rows), static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < p.rows; ++i) {
          std::size_t part = 0;
          for (std::size_t c = 0; c < groups[idx].cols; ++c)
            if (groups[idx](i, c) == 1.0) part = c;
          for (std::size_t a = 0; a < p.cols; ++a) p(i, a) = coarse(part, a);
        }
        partitions.push_back(apply_perm(std::move(p)));
        provs.push_back({k, r, "composed",
                         (static_cast<std::uint64_t>(kp) << 32) | idx, seed});
      }
    }

    if (rows % k == 0) {
      const long long count =
          count_hard_partitions(rows, k, budget.hard_cap);
      if (count <= budget.hard_cap) {
        auto all = enumerate_hard_partitions(rows, k);
        for (std::size_t idx = 0; idx < all.size(); ++idx) {
          partitions.push_back(apply_perm(std::move(all[idx])));
          provs.push_back({k, r, "hard", idx, seed});
        }
      } else {
        for (int idx = 0; idx < budget.hard_cap; ++idx) {
          const std::uint64_t draw =
              draw_counter(r, 1, static_cast<std::uint64_t>(idx));
          partitions.push_back(apply_perm(
              sample_fractional_partition(rows, k, seed, PartitionMode::hard,
                                          draw)
                  .weights()));
          provs.push_back({k, r, "hard", draw, seed});
        }
      }
    }
    for (int idx = 0; idx < budget.samples; ++idx) {
      const std::uint64_t draw =
          draw_counter(r, 2, static_cast<std::uint64_t>(idx));
      partitions.push_back(apply_perm(
          sample_fractional_partition(rows, k, seed, PartitionMode::soft, draw)
              .weights()));
      provs.push_back({k, r, "soft", draw, seed});
    }

    std::vector<Matrix> quotients(partitions.size());
    parallel_for(partitions.size(), [&](std::size_t i) {
      quotients[i] =
          quotient(FractionalPartition(std::move(partitions[i])), refined);
    });
    for (std::size_t i = 0; i < quotients.size(); ++i)
      cloud.insert(std::move(quotients[i]), std::move(provs[i]));
  }
  return cloud;
}

ShapeCloud embed_kshape(const KShapeCloud& cloud) {
  ShapeCloud out;
  out.points.reserve(cloud.points().size());
  for (std::size_t i = 0; i < cloud.points().size(); ++i) {
    out.points.emplace_back(cloud.points()[i]);
    out.provenance.push_back(cloud.provenance()[i]);
  }
  return out;
}

ShapeCloud build_shape(const GridMeasure& m, int kmax, const CloudBudget& budget,
                       std::uint64_t seed,
                       const std::vector<int>& row_permutation) {
  if (kmax < 1) throw DomainError("kmax must be positive");
  ShapeCloud out;
  for (int k = 1; k <= kmax; ++k) {
    const ShapeCloud sub = embed_kshape(build_kshape(
        m, k, budget, mix_key(seed, static_cast<std::uint64_t>(k)),
        row_permutation));
    out.points.insert(out.points.end(), sub.points.begin(), sub.points.end());
    out.provenance.insert(out.provenance.end(), sub.provenance.begin(),
                          sub.provenance.end());
  }
  return out;
}

namespace {

// max over rows of (min over columns) of dist(i, j), outer loop parallel.
template <typename Dist>
double directed_hausdorff(std::size_t na, std::size_t nb, const Dist& dist) {
  std::vector<double> nearest(na);
  parallel_for(na, [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nb; ++j) best = std::min(best, dist(i, j));
    nearest[i] = best;
  });
  double worst = 0.0;
  for (double v : nearest) worst = std::max(worst, v);
  return worst;
}

}  // namespace

double hausdorff_matrix(const KShapeCloud& a, const KShapeCloud& b) {
  if (a.k() != b.k())
    throw DimensionMismatch("clouds have different k: " + std::to_string(a.k()) +
                            " vs " + std::to_string(b.k()));
  if (a.empty() || b.empty()) throw EmptyCloud();
  auto dab = [&](std::size_t i, std::size_t j) {
    return max_abs_diff(a.points()[i], b.points()[j]);
  };
  auto dba = [&](std::size_t i, std::size_t j) {
    return max_abs_diff(b.points()[i], a.points()[j]);
  };
  return std::max(directed_hausdorff(a.points().size(), b.points().size(), dab),
                  directed_hausdorff(b.points().size(), a.points().size(), dba));
}

double hausdorff_rho(const ShapeCloud& a, const ShapeCloud& b,
                     const RhoMetric& metric) {
  if (a.points.empty() || b.points.empty()) throw EmptyCloud();
  std::vector<std::vector<double>> pa(a.points.size());
  std::vector<std::vector<double>> pb(b.points.size());
  parallel_for(pa.size(), [&](std::size_t i) { pa[i] = metric.profile(a.points[i]); });
  parallel_for(pb.size(), [&](std::size_t i) { pb[i] = metric.profile(b.points[i]); });
  auto dab = [&](std::size_t i, std::size_t j) {
    return metric.distance_from_profiles(pa[i], pb[j]);
  };
  auto dba = [&](std::size_t i, std::size_t j) {
    return metric.distance_from_profiles(pb[i], pa[j]);
  };
  return std::max(directed_hausdorff(pa.size(), pb.size(), dab),
                  directed_hausdorff(pb.size(), pa.size(), dba));
}

double regularity_gap(const GridMeasure& m, int K, const ShapeCloud& c,
                      const RhoMetric& metric, const CloudBudget& budget,
                      std::uint64_t seed) {
  const KShapeCloud ksub = build_kshape(
      m, K, budget, mix_key(seed, static_cast<std::uint64_t>(K)));
  return hausdorff_rho(c, embed_kshape(ksub), metric);
}

}  // namespace sconv
