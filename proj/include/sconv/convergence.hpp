#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sconv/grid_measure.hpp"
#include "sconv/rho_metric.hpp"
#include "sconv/shapes.hpp"

namespace sconv {

enum class Family { erdos_renyi, complete_bipartite, star, clique, custom };

struct SequenceSpec {
  Family family = Family::erdos_renyi;
  double edge_probability = 0.5;  // erdos_renyi only
  std::vector<int> sizes;         // strictly increasing
  std::uint64_t seed = 0;
  std::vector<std::string> files;  // custom family: graph files in order
};

struct GeneratedGraph {
  Graph graph;
  int size = 0;     // the requested size parameter
  int retries = 0;  // ER resamples needed to get a non-empty edge set
};

// Deterministic given the spec. The custom family is materialized by the CLI
// (this layer does no file I/O).
std::vector<GeneratedGraph> generate(const SequenceSpec& spec);

struct ReportEntry {
  int index = 0;  // position in the sequence
  int n = 0;      // size parameter of the graph
  int k = 0;      // 0 for shape rows
  bool shape_row = false;
  double distance = 0.0;
  double uncertainty = 0.0;  // 2^-depth for rho rows, 0 for matrix rows
  std::int64_t millis = 0;
};

struct ConvergenceReport {
  std::vector<ReportEntry> entries;
  // Consecutive-pair shape distances, filled when no target is supplied.
  std::vector<double> cauchy;
  CloudBudget budget;
  int depth = 64;
  std::uint64_t seed = 0;
  bool record_timings = false;
};

// Theorem condition (1): per (n, k), matrix-Hausdorff distance from the
// k-shape cloud of the embedded graph to the target k-shape cloud. A missing
// target means the uniform measure, whose k-shape is the analytic singleton
// {J/k^2} (no sampling on the target side).
ConvergenceReport test_kshape_convergence(
    const std::vector<GeneratedGraph>& sequence,
    const std::optional<GridMeasure>& target, const std::vector<int>& ks,
    const CloudBudget& budget, std::uint64_t seed, bool record_timings = false);

// Theorem condition (2): per n, rho-Hausdorff distance between shape clouds.
// Without a target, emits consecutive pairwise distances instead (Cauchy
// diagnostic).
ConvergenceReport test_shape_convergence(
    const std::vector<GeneratedGraph>& sequence,
    const std::optional<GridMeasure>& target, int kmax,
    const CloudBudget& budget, const RhoMetric& metric, std::uint64_t seed,
    bool record_timings = false);

struct PipelineDiagnostic {
  double correlation = 0.0;  // Spearman, NaN when degenerate
  bool degenerate = false;   // constant series: correlation undefined
  bool pass = false;         // degenerate counts as PASS; never a hard failure
};

// Co-trend check between the two pipelines: Spearman rank correlation between
// per-index max-over-k matrix distances and per-index shape distances.
PipelineDiagnostic cross_pipeline_check(const ConvergenceReport& kshape_report,
                                        const ConvergenceReport& shape_report);

}  // namespace sconv
