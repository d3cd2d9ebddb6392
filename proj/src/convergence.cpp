#include "sconv/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sconv/errors.hpp"
#include "sconv/rng.hpp"

namespace sconv {

namespace {

Graph make_clique(int n) {
  if (n < 2) throw InfeasibleSpec("clique needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// Star family: size n is the leaf count, K_{1,n} on n + 1 vertices.
Graph make_star(int n) {
  if (n < 2) throw InfeasibleSpec("star needs n >= 2 leaves");
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= n + 1; ++v) edges.emplace_back(1, v);
  return Graph(n + 1, std::move(edges));
}

// Complete bipartite on n vertices split as evenly as possible.
Graph make_bipartite(int n) {
  if (n < 2) throw InfeasibleSpec("complete bipartite needs n >= 2");
  const int left = (n + 1) / 2;
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= left; ++u)
    for (int v = left + 1; v <= n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

GeneratedGraph make_er(int n, double p, std::uint64_t seed, int index) {
  if (n < 2) throw InfeasibleSpec("erdos_renyi needs n >= 2");
  if (!(p > 0.0) || p > 1.0)
    throw InfeasibleSpec("erdos_renyi needs edge probability in (0, 1]");
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 1000)
      throw InfeasibleSpec("erdos_renyi kept sampling empty edge sets");
    RngStream stream(seed,
                     mix_key(static_cast<std::uint64_t>(index),
                             static_cast<std::uint64_t>(attempt)));
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (stream.uniform() < p) edges.emplace_back(u, v);
    if (!edges.empty()) return {Graph(n, std::move(edges)), n, attempt};
  }
}

}  // namespace

std::vector<GeneratedGraph> generate(const SequenceSpec& spec) {
  if (spec.family == Family::custom)
    throw InputError("custom sequences are materialized by the CLI layer");
  if (spec.sizes.empty()) throw InfeasibleSpec("sequence has no sizes");
  for (std::size_t i = 1; i < spec.sizes.size(); ++i)
    if (spec.sizes[i] <= spec.sizes[i - 1])
      throw InfeasibleSpec("sizes must be strictly increasing");

  std::vector<GeneratedGraph> out;
  out.reserve(spec.sizes.size());
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    const int n = spec.sizes[i];
    switch (spec.family) {
      case Family::erdos_renyi:
        out.push_back(
            make_er(n, spec.edge_probability, spec.seed, static_cast<int>(i)));
        break;
      case Family::clique:
        out.push_back({make_clique(n), n, 0});
        break;
      case Family::star:
        out.push_back({make_star(n), n, 0});
        break;
      case Family::complete_bipartite:
        out.push_back({make_bipartite(n), n, 0});
        break;
      case Family::custom:
        break;
    }
  }
  return out;
}

namespace {

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

KShapeCloud uniform_kshape_singleton(int k) {
  KShapeCloud cloud(k);
  const double cell = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  cloud.insert(Matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(k),
                      cell),
               {k, 1, "flat", 0, 0});
  return cloud;
}

}  // namespace

ConvergenceReport test_kshape_convergence(
    const std::vector<GeneratedGraph>& sequence,
    const std::optional<GridMeasure>& target, const std::vector<int>& ks,
    const CloudBudget& budget, std::uint64_t seed, bool record_timings) {
  if (sequence.empty()) throw InfeasibleSpec("empty graph sequence");
  if (ks.empty()) throw InfeasibleSpec("no k values requested");

  ConvergenceReport report;
  report.budget = budget;
  report.seed = seed;
  report.record_timings = record_timings;

  std::vector<KShapeCloud> targets;
  targets.reserve(ks.size());
  for (int k : ks) {
    targets.push_back(target
                          ? build_kshape(*target, k, budget,
                                         mix_key(mix_key(seed, 0x7a67e7ULL),
                                                 static_cast<std::uint64_t>(k)))
                          : uniform_kshape_singleton(k));
  }

  for (std::size_t idx = 0; idx < sequence.size(); ++idx) {
    const GridMeasure embedded = embed_graph(sequence[idx].graph);
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      const auto start = std::chrono::steady_clock::now();
      // seeded per k only: identical graphs yield identical clouds, so a
      // constant sequence reports exactly zero
      const KShapeCloud cloud = build_kshape(
          embedded, ks[ki], budget,
          mix_key(seed, static_cast<std::uint64_t>(ks[ki])));
      const double d = hausdorff_matrix(cloud, targets[ki]);
      report.entries.push_back({static_cast<int>(idx), sequence[idx].size,
                                ks[ki], false, d, 0.0,
                                record_timings ? elapsed_ms(start) : 0});
    }
  }
  return report;
}

ConvergenceReport test_shape_convergence(
    const std::vector<GeneratedGraph>& sequence,
    const std::optional<GridMeasure>& target, int kmax,
    const CloudBudget& budget, const RhoMetric& metric, std::uint64_t seed,
    bool record_timings) {
  if (sequence.empty()) throw InfeasibleSpec("empty graph sequence");
  if (kmax < 1) throw InfeasibleSpec("kmax must be positive");

  ConvergenceReport report;
  report.budget = budget;
  report.depth = metric.depth();
  report.seed = seed;
  report.record_timings = record_timings;

  std::optional<ShapeCloud> target_cloud;
  if (target) {
    target_cloud = build_shape(*target, kmax, budget, mix_key(seed, 0x7a67e7ULL));
  }

  std::vector<ShapeCloud> clouds;
  clouds.reserve(sequence.size());
  std::vector<std::int64_t> build_ms(sequence.size(), 0);
  for (std::size_t idx = 0; idx < sequence.size(); ++idx) {
    const auto start = std::chrono::steady_clock::now();
    // one seed for every index: identical graphs yield identical clouds
    clouds.push_back(
        build_shape(embed_graph(sequence[idx].graph), kmax, budget, seed));
    build_ms[idx] = elapsed_ms(start);
  }

  if (target_cloud) {
    for (std::size_t idx = 0; idx < sequence.size(); ++idx) {
      const auto start = std::chrono::steady_clock::now();
      const double d = hausdorff_rho(clouds[idx], *target_cloud, metric);
      report.entries.push_back(
          {static_cast<int>(idx), sequence[idx].size, 0, true, d,
           metric.tail_bound(),
           record_timings ? build_ms[idx] + elapsed_ms(start) : 0});
    }
  } else {
    for (std::size_t idx = 0; idx + 1 < sequence.size(); ++idx)
      report.cauchy.push_back(
          hausdorff_rho(clouds[idx], clouds[idx + 1], metric));
    for (std::size_t idx = 0; idx < sequence.size(); ++idx)
      report.entries.push_back({static_cast<int>(idx), sequence[idx].size, 0,
                                true, 0.0, metric.tail_bound(),
                                record_timings ? build_ms[idx] : 0});
  }
  return report;
}

PipelineDiagnostic cross_pipeline_check(const ConvergenceReport& kshape_report,
                                        const ConvergenceReport& shape_report) {
  // Per-index max over k from the matrix pipeline.
  std::vector<double> a, b;
  std::vector<int> a_n, b_n;
  for (const auto& e : kshape_report.entries) {
    if (e.shape_row) continue;
    if (a_n.empty() || a_n.back() != e.n) {
      a_n.push_back(e.n);
      a.push_back(e.distance);
    } else {
      a.back() = std::max(a.back(), e.distance);
    }
  }
  for (const auto& e : shape_report.entries) {
    if (!e.shape_row) continue;
    b_n.push_back(e.n);
    b.push_back(e.distance);
  }
  if (a_n != b_n || a.empty())
    throw MismatchedSequences("reports cover different sequences");

  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double mean = 0.5 * (static_cast<double>(i) + static_cast<double>(j));
      for (std::size_t t = i; t <= j; ++t) rank[order[t]] = mean;
      i = j + 1;
    }
    return rank;
  };

  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  auto variance = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var;
  };
  const double va = variance(ra);
  const double vb = variance(rb);

  PipelineDiagnostic diag;
  if (va == 0.0 || vb == 0.0) {
    diag.degenerate = true;
    diag.correlation = std::numeric_limits<double>::quiet_NaN();
    diag.pass = true;
    return diag;
  }
  double cov = 0.0;
  double ma = 0.0, mb = 0.0;
  for (double x : ra) ma += x;
  for (double x : rb) mb += x;
  ma /= static_cast<double>(ra.size());
  mb /= static_cast<double>(rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i)
    cov += (ra[i] - ma) * (rb[i] - mb);
  diag.correlation = cov / std::sqrt(va * vb);
  diag.pass = diag.correlation >= 0.8;
  return diag;
}

}  // namespace sconv
