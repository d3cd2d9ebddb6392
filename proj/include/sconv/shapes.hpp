#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sconv/grid_measure.hpp"
#include "sconv/kernels.hpp"
#include "sconv/rho_metric.hpp"

namespace sconv {

// How each cloud point was produced; enough to rebuild it.
struct PointProvenance {
  int k = 0;             // quotient size
  int refine_level = 1;  // r
  std::string mode;      // "flat" | "hard" | "soft"
  std::uint64_t draw = 0;
  std::uint64_t seed = 0;
};

struct CloudBudget {
  int max_refine = 2;    // R: refinement levels 1..R
  int samples = 500;     // S: soft draws per level
  int hard_cap = 10000;  // enumerate all hard partitions up to this count,
                         // otherwise sample exactly this many
};

// Finite approximation of the k-shape: deduplicated k x k matrices in M_k^*.
class KShapeCloud {
 public:
  explicit KShapeCloud(int k);

  int k() const { return k_; }
  const std::vector<Matrix>& points() const { return points_; }
  const std::vector<PointProvenance>& provenance() const { return provenance_; }
  bool empty() const { return points_.empty(); }

  // Validates membership in M_k^* and deduplicates under entrywise
  // max-difference < 1e-12. Returns true when the point was new.
  bool insert(Matrix point, PointProvenance prov);

  bool contains(const Matrix& point, double tol = 1e-12) const;

 private:
  int k_;
  std::vector<Matrix> points_;
  std::vector<PointProvenance> provenance_;
  std::vector<std::size_t> by_first_;  // indices sorted by first entry
};

// Finite approximation of the shape: grid measures, possibly at mixed
// resolutions. Not deduplicated across resolutions.
struct ShapeCloud {
  std::vector<GridMeasure> points;
  std::vector<PointProvenance> provenance;
};

// Quotients of refine(m, r), r = 1..R, against soft-sampled partitions plus
// the deterministic flat candidate and the hard candidates (all of them when
// there are at most hard_cap, else hard_cap sampled ones). Deterministic in
// all inputs. row_permutation, when nonempty, relabels the base grid cells
// and is applied to every partition; it is how callers route seeds through a
// vertex permutation.
KShapeCloud build_kshape(const GridMeasure& m, int k, const CloudBudget& budget,
                         std::uint64_t seed,
                         const std::vector<int>& row_permutation = {});

// Union over k = 1..kmax of build_kshape clouds (per-k seed mix_key(seed, k)),
// each point embedded as the grid measure at resolution k.
ShapeCloud build_shape(const GridMeasure& m, int kmax, const CloudBudget& budget,
                       std::uint64_t seed,
                       const std::vector<int>& row_permutation = {});

ShapeCloud embed_kshape(const KShapeCloud& cloud);

// Hausdorff distance under the entrywise max-difference on M_k.
double hausdorff_matrix(const KShapeCloud& a, const KShapeCloud& b);

// Hausdorff distance under rho; carries the metric's 2^-depth truncation as
// additive uncertainty.
double hausdorff_rho(const ShapeCloud& a, const ShapeCloud& b,
                     const RhoMetric& metric);

// hausdorff_rho between a shape cloud built from m (with `seed`) and the
// embedded K-shape cloud rebuilt with the same budget and the matching per-k
// seed, so at K = kmax the K-cloud is literally a subset of c.
double regularity_gap(const GridMeasure& m, int K, const ShapeCloud& c,
                      const RhoMetric& metric, const CloudBudget& budget,
                      std::uint64_t seed);

}  // namespace sconv
