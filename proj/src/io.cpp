#include "sconv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sconv/errors.hpp"

namespace sconv::io {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void dump_rec(std::string& out, const nlohmann::json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        dump_rec(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(out, v, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      append_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump_rec(out, j, 0);
  out += "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const auto tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    if (!out) throw InputError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line())
    throw InputError(path.string() + ": empty file");
  int n = 0;
  long long m = 0;
  {
    std::istringstream head(line);
    if (!(head >> n >> m) || n < 1 || m < 0)
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": expected header \"n m\"");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!next_line())
      throw InputError(path.string() + ":" + std::to_string(lineno + 1) +
                       ": missing edge line");
    std::istringstream row(line);
    int u = 0, v = 0;
    if (!(row >> u >> v))
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": expected edge \"u v\"");
    std::string extra;
    if (row >> extra)
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": trailing tokens on edge line");
    edges.emplace_back(u, v);
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const DomainError& err) {
    throw DomainError(path.string() + ": " + err.what());
  }
}

nlohmann::json measure_to_json(const GridMeasure& m) {
  nlohmann::json j;
  j["resolution"] = m.resolution();
  j["masses"] = m.masses().data;
  return j;
}

GridMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.contains("resolution") || !j.contains("masses"))
    throw InputError("measure JSON needs \"resolution\" and \"masses\"");
  const auto k = j.at("resolution").get<std::size_t>();
  Matrix masses(k, k);
  const auto& arr = j.at("masses");
  if (arr.size() != k * k)
    throw InputError("measure JSON masses must have resolution^2 entries");
  for (std::size_t i = 0; i < masses.data.size(); ++i)
    masses.data[i] = arr.at(i).get<double>();
  return GridMeasure(std::move(masses));
}

nlohmann::json weights_to_json(const Matrix& w) {
  nlohmann::json j;
  j["rows"] = w.rows;
  j["cols"] = w.cols;
  j["weights"] = w.data;
  return j;
}

Matrix weights_from_json(const nlohmann::json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("weights"))
    throw InputError("weights JSON needs \"rows\", \"cols\" and \"weights\"");
  Matrix w(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& arr = j.at("weights");
  if (arr.size() != w.data.size())
    throw InputError("weights JSON has wrong number of entries");
  for (std::size_t i = 0; i < w.data.size(); ++i)
    w.data[i] = arr.at(i).get<double>();
  return w;
}

namespace {

nlohmann::json provenance_to_json(const PointProvenance& p) {
  nlohmann::json j;
  j["k"] = p.k;
  j["refine"] = p.refine_level;
  j["mode"] = p.mode;
  j["draw"] = p.draw;
  j["seed"] = p.seed;
  return j;
}

PointProvenance provenance_from_json(const nlohmann::json& j) {
  PointProvenance p;
  p.k = j.value("k", 0);
  p.refine_level = j.value("refine", 1);
  p.mode = j.value("mode", "");
  p.draw = j.value("draw", std::uint64_t{0});
  p.seed = j.value("seed", std::uint64_t{0});
  return p;
}

}  // namespace

nlohmann::json kshape_cloud_to_json(const KShapeCloud& cloud) {
  nlohmann::json j;
  j["kind"] = "kshape";
  j["k"] = cloud.k();
  j["points"] = nlohmann::json::array();
  j["provenance"] = nlohmann::json::array();
  for (const auto& p : cloud.points()) j["points"].push_back(p.data);
  for (const auto& p : cloud.provenance())
    j["provenance"].push_back(provenance_to_json(p));
  return j;
}

KShapeCloud kshape_cloud_from_json(const nlohmann::json& j) {
  if (j.value("kind", "") != "kshape")
    throw InputError("expected a kshape cloud file");
  const int k = j.at("k").get<int>();
  KShapeCloud cloud(k);
  const auto& points = j.at("points");
  const auto& provs = j.at("provenance");
  for (std::size_t i = 0; i < points.size(); ++i) {
    Matrix q(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    for (std::size_t t = 0; t < q.data.size(); ++t)
      q.data[t] = points.at(i).at(t).get<double>();
    cloud.insert(std::move(q), i < provs.size()
                                   ? provenance_from_json(provs.at(i))
                                   : PointProvenance{});
  }
  return cloud;
}

nlohmann::json shape_cloud_to_json(const ShapeCloud& cloud) {
  nlohmann::json j;
  j["kind"] = "shape";
  j["points"] = nlohmann::json::array();
  j["provenance"] = nlohmann::json::array();
  for (const auto& p : cloud.points) j["points"].push_back(measure_to_json(p));
  for (const auto& p : cloud.provenance)
    j["provenance"].push_back(provenance_to_json(p));
  return j;
}

ShapeCloud shape_cloud_from_json(const nlohmann::json& j) {
  if (j.value("kind", "") != "shape")
    throw InputError("expected a shape cloud file");
  ShapeCloud cloud;
  for (const auto& p : j.at("points"))
    cloud.points.push_back(measure_from_json(p));
  for (const auto& p : j.at("provenance"))
    cloud.provenance.push_back(provenance_from_json(p));
  return cloud;
}

nlohmann::json report_to_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["budgets"] = {{"refine", report.budget.max_refine},
                  {"samples", report.budget.samples},
                  {"hard_cap", report.budget.hard_cap}};
  j["depth"] = report.depth;
  j["seed"] = report.seed;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json row;
    row["index"] = e.index;
    row["n"] = e.n;
    if (e.shape_row)
      row["k"] = "shape";
    else
      row["k"] = e.k;
    row["distance"] = e.distance;
    row["uncertainty"] = e.uncertainty;
    row["millis"] = e.millis;
    j["entries"].push_back(row);
  }
  if (!report.cauchy.empty()) j["cauchy"] = report.cauchy;
  return j;
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "n,k,distance,uncertainty,refine,samples,depth,seed,millis\n";
  for (const auto& e : report.entries) {
    out += std::to_string(e.n) + ",";
    out += e.shape_row ? "shape" : std::to_string(e.k);
    out += ",";
    append_number(out, e.distance);
    out += ",";
    append_number(out, e.uncertainty);
    out += "," + std::to_string(report.budget.max_refine);
    out += "," + std::to_string(report.budget.samples);
    out += "," + std::to_string(report.depth);
    out += "," + std::to_string(report.seed);
    out += "," + std::to_string(e.millis) + "\n";
  }
  return out;
}

}  // namespace sconv::io
