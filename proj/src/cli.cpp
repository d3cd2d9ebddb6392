#include "sconv/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "sconv/convergence.hpp"
#include "sconv/errors.hpp"
#include "sconv/grid_measure.hpp"
#include "sconv/io.hpp"
#include "sconv/kernels.hpp"
#include "sconv/parallel.hpp"
#include "sconv/rho_metric.hpp"
#include "sconv/shapes.hpp"
#include "sconv/verify.hpp"

namespace sconv::cli {

namespace {

// Accepts both a bare measure JSON and the output of `embed` (measure
// nested under "measure").
GridMeasure load_measure(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(io::read_file(path));
  if (j.contains("measure")) j = j.at("measure");
  return io::measure_from_json(j);
}

nlohmann::json tool_stamp(const nlohmann::json& config) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  return j;
}

void write_output(const std::string& path, nlohmann::json payload,
                  const nlohmann::json& config) {
  nlohmann::json out = tool_stamp(config);
  out.update(payload);
  io::write_file_atomic(path, io::dump_json(out));
}

struct ConvergeOptions {
  std::string family = "erdos_renyi";
  double p = 0.5;
  std::vector<int> sizes;
  std::vector<std::string> files;
  std::vector<int> ks{1, 2, 3, 4};
  int kmax = 4;
  int refine = 2;
  int samples = 500;
  int depth = 64;
  std::uint64_t seed = 0;
  std::string target;  // empty = uniform, else a measure file
  std::string metric = "both";
  std::string format = "json";
  std::string out = "report";
  bool timing = false;
};

Family parse_family(const std::string& name) {
  if (name == "erdos_renyi" || name == "er") return Family::erdos_renyi;
  if (name == "complete_bipartite" || name == "bipartite")
    return Family::complete_bipartite;
  if (name == "star") return Family::star;
  if (name == "clique") return Family::clique;
  if (name == "custom") return Family::custom;
  throw InputError("unknown family: " + name);
}

int run_converge(const ConvergeOptions& opt, const nlohmann::json& config) {
  SequenceSpec spec;
  spec.family = parse_family(opt.family);
  spec.edge_probability = opt.p;
  spec.sizes = opt.sizes;
  spec.seed = opt.seed;
  spec.files = opt.files;

  std::vector<GeneratedGraph> sequence;
  if (spec.family == Family::custom) {
    if (spec.files.empty()) throw InputError("custom family needs --files");
    for (std::size_t i = 0; i < spec.files.size(); ++i) {
      Graph g = io::read_graph(spec.files[i]);
      sequence.push_back({g, g.vertex_count(), 0});
    }
  } else {
    sequence = generate(spec);
  }

  // --target: "uniform" (default), "none" (Cauchy diagnostics, rho pipeline
  // only) or a measure JSON file. The uniform k-shape target is the analytic
  // singleton; the uniform shape target is the uniform measure's cloud.
  const bool cauchy_mode = opt.target == "none";
  std::optional<GridMeasure> file_target;
  if (!opt.target.empty() && opt.target != "uniform" && !cauchy_mode)
    file_target = load_measure(opt.target);

  CloudBudget budget{opt.refine, opt.samples, 10000};
  const RhoMetric metric(opt.depth);

  std::optional<ConvergenceReport> kreport, sreport;
  if (!cauchy_mode && (opt.metric == "matrix" || opt.metric == "both"))
    kreport = test_kshape_convergence(sequence, file_target, opt.ks, budget,
                                      opt.seed, opt.timing);
  if (cauchy_mode || opt.metric == "rho" || opt.metric == "both") {
    std::optional<GridMeasure> shape_target;
    if (!cauchy_mode)
      shape_target = file_target ? *file_target : GridMeasure::uniform(1);
    sreport = test_shape_convergence(sequence, shape_target, opt.kmax, budget,
                                     metric, opt.seed, opt.timing);
  }

  ConvergenceReport combined;
  combined.budget = budget;
  combined.depth = opt.depth;
  combined.seed = opt.seed;
  if (kreport)
    combined.entries.insert(combined.entries.end(), kreport->entries.begin(),
                            kreport->entries.end());
  if (sreport) {
    combined.entries.insert(combined.entries.end(), sreport->entries.begin(),
                            sreport->entries.end());
    combined.cauchy = sreport->cauchy;
  }

  nlohmann::json payload;
  payload["report"] = io::report_to_json(combined);
  if (kreport && sreport && !sreport->entries.empty() &&
      sreport->cauchy.empty()) {
    const PipelineDiagnostic diag = cross_pipeline_check(*kreport, *sreport);
    payload["cross_pipeline"] = {
        {"correlation", diag.degenerate ? nlohmann::json()
                                        : nlohmann::json(diag.correlation)},
        {"degenerate", diag.degenerate},
        {"status", diag.pass ? "PASS" : "WARN"}};
  }
  nlohmann::json retries = nlohmann::json::array();
  for (const auto& g : sequence) retries.push_back(g.retries);
  payload["retries"] = retries;

  if (opt.format == "csv") {
    io::write_file_atomic(opt.out + ".csv", io::report_to_csv(combined));
    write_output(opt.out + ".json", payload, config);
  } else {
    write_output(opt.out + ".json", payload, config);
    io::write_file_atomic(opt.out + ".csv", io::report_to_csv(combined));
  }
  return 0;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"s-convergence toolkit: grid measures, shape clouds and "
               "Hausdorff convergence tests"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = hardware concurrency); results do not "
                 "depend on this");

  // embed
  std::string embed_in, embed_out = "measure.json";
  auto* embed = app.add_subcommand(
      "embed",
      "Embed a graph file as a grid measure (adjacency matrix normalized by "
      "its l1 norm).\nGraph file: first line \"n m\", then m lines \"u v\", "
      "1-based.\nExample (K_2):\n  2 1\n  1 2\nyields masses "
      "[[0,0.5],[0.5,0]].");
  embed->add_option("--in", embed_in, "graph file")->required();
  embed->add_option("--out", embed_out, "output measure JSON");

  // kshape / shape
  std::string cloud_in, cloud_out = "cloud.json";
  int opt_k = 2, opt_kmax = 4, opt_refine = 2, opt_samples = 500;
  std::uint64_t opt_seed = 0;
  auto add_cloud_flags = [&](CLI::App* cmd, bool kshape) {
    cmd->add_option("--in", cloud_in, "measure JSON file")->required();
    if (kshape)
      cmd->add_option("--k", opt_k, "quotient size k");
    else
      cmd->add_option("--kmax", opt_kmax, "largest quotient size");
    cmd->add_option("--refine", opt_refine, "refinement levels R");
    cmd->add_option("--samples", opt_samples, "soft samples per level");
    cmd->add_option("--seed", opt_seed, "RNG seed");
    cmd->add_option("--out", cloud_out, "output cloud JSON");
  };
  auto* kshape = app.add_subcommand(
      "kshape", "Build a finite k-shape cloud of quotient matrices.\nFor the "
                "K_2 measure at k=2 the cloud contains [[0,0.5],[0.5,0]].");
  add_cloud_flags(kshape, true);
  auto* shape = app.add_subcommand(
      "shape", "Build a finite shape cloud (embedded k-shapes, k = 1..kmax).");
  add_cloud_flags(shape, false);

  // dist
  std::string dist_a, dist_b, dist_metric = "matrix", dist_out;
  int dist_depth = 64;
  auto* dist = app.add_subcommand(
      "dist", "Hausdorff distance between two cloud files.\n--metric matrix: "
              "entrywise max difference on k-shape clouds.\n--metric rho: "
              "truncated weak-topology metric on shape clouds.");
  dist->add_option("--a", dist_a, "first cloud file")->required();
  dist->add_option("--b", dist_b, "second cloud file")->required();
  dist->add_option("--metric", dist_metric, "matrix | rho");
  dist->add_option("--depth", dist_depth, "rho truncation depth J");
  dist->add_option("--out", dist_out, "optional JSON record");

  // converge
  ConvergeOptions conv;
  auto* converge = app.add_subcommand(
      "converge",
      "Generate a graph sequence and test s-convergence through both "
      "pipelines (k-shape matrix Hausdorff and shape rho Hausdorff).");
  converge->add_option("--family", conv.family,
                       "erdos_renyi | complete_bipartite | star | clique | "
                       "custom");
  converge->add_option("--p", conv.p, "edge probability (erdos_renyi)");
  converge->add_option("--sizes", conv.sizes, "strictly increasing sizes")
      ->delimiter(',');
  converge->add_option("--files", conv.files, "graph files (custom family)")
      ->delimiter(',');
  converge->add_option("--k", conv.ks, "k values for the matrix pipeline")
      ->delimiter(',');
  converge->add_option("--kmax", conv.kmax, "kmax for the shape pipeline");
  converge->add_option("--refine", conv.refine, "refinement levels R");
  converge->add_option("--samples", conv.samples, "soft samples per level");
  converge->add_option("--depth", conv.depth, "rho truncation depth J");
  converge->add_option("--seed", conv.seed, "RNG seed");
  converge->add_option("--target", conv.target,
                       "\"uniform\" (default) or a measure JSON file");
  converge->add_option("--metric", conv.metric, "matrix | rho | both");
  converge->add_option("--format", conv.format, "json | csv");
  converge->add_option("--out", conv.out, "output path prefix");
  converge->add_flag("--timing", conv.timing,
                     "record wall times in the report (breaks byte-for-byte "
                     "reproducibility of output files)");

  // verify
  std::uint64_t verify_seed = 0x5c0417ULL;
  bool verify_corrupt = false;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the exact-identity suite; exit 0 iff every check passes.");
  verify_cmd->add_option("--seed", verify_seed, "suite RNG seed");
  verify_cmd->add_flag("--corrupt", verify_corrupt,
                       "dev flag: inject a mass defect to exercise the "
                       "failure path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  set_default_thread_count(threads);

  nlohmann::json config;
  config["argv"] = args;
  config["threads_note"] = "thread count does not affect results";

  if (*embed) {
    const Graph g = io::read_graph(embed_in);
    write_output(embed_out, {{"measure", io::measure_to_json(embed_graph(g))}},
                 config);
    return 0;
  }
  if (*kshape || *shape) {
    const GridMeasure m = load_measure(cloud_in);
    CloudBudget budget{opt_refine, opt_samples, 10000};
    nlohmann::json payload;
    nlohmann::json builder = {{"refine", opt_refine},
                              {"samples", opt_samples},
                              {"hard_cap", budget.hard_cap},
                              {"seed", opt_seed}};
    if (*kshape) {
      builder["k"] = opt_k;
      payload = io::kshape_cloud_to_json(build_kshape(m, opt_k, budget, opt_seed));
    } else {
      builder["kmax"] = opt_kmax;
      payload = io::shape_cloud_to_json(build_shape(m, opt_kmax, budget, opt_seed));
    }
    payload["builder_params"] = builder;
    write_output(cloud_out, {{"cloud", payload}}, config);
    return 0;
  }
  if (*dist) {
    const auto ja = nlohmann::json::parse(io::read_file(dist_a));
    const auto jb = nlohmann::json::parse(io::read_file(dist_b));
    auto cloud_of = [](const nlohmann::json& j) { return j.at("cloud"); };
    double d = 0.0;
    double uncertainty = 0.0;
    if (dist_metric == "matrix") {
      d = hausdorff_matrix(io::kshape_cloud_from_json(cloud_of(ja)),
                           io::kshape_cloud_from_json(cloud_of(jb)));
    } else if (dist_metric == "rho") {
      const RhoMetric metric(dist_depth);
      auto as_shape = [&](const nlohmann::json& j) {
        if (j.value("kind", "") == "kshape")
          return embed_kshape(io::kshape_cloud_from_json(j));
        return io::shape_cloud_from_json(j);
      };
      d = hausdorff_rho(as_shape(cloud_of(ja)), as_shape(cloud_of(jb)), metric);
      uncertainty = metric.tail_bound();
    } else {
      throw InputError("unknown metric: " + dist_metric);
    }
    std::printf("%.17g\n", d);
    if (!dist_out.empty())
      write_output(dist_out,
                   {{"distance", d}, {"uncertainty", uncertainty}}, config);
    return 0;
  }
  if (*converge) return run_converge(conv, config);
  if (*verify_cmd) {
    const verify::SuiteResult result =
        verify::run_suite(verify_seed, verify_corrupt);
    for (const auto& c : result.checks)
      std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.detail.c_str());
    return result.all_passed() ? 0 : 5;
  }
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.category());
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace sconv::cli
