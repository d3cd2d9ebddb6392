#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sconv/convergence.hpp"
#include "sconv/grid_measure.hpp"
#include "sconv/kernels.hpp"
#include "sconv/shapes.hpp"

namespace sconv::io {

// Canonical JSON serialization: sorted keys (nlohmann default), two-space
// indent, every floating-point number printed with 17 significant digits so
// values round-trip exactly and files are byte-stable.
std::string dump_json(const nlohmann::json& j);

// Write via temp file + rename in the target directory.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Graph file: first line "n m", then m lines "u v", 1-based. Parse failures
// report the offending line number.
Graph read_graph(const std::filesystem::path& path);

nlohmann::json measure_to_json(const GridMeasure& m);
GridMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json weights_to_json(const Matrix& w);  // {"rows","cols","weights"}
Matrix weights_from_json(const nlohmann::json& j);

nlohmann::json kshape_cloud_to_json(const KShapeCloud& cloud);
KShapeCloud kshape_cloud_from_json(const nlohmann::json& j);

nlohmann::json shape_cloud_to_json(const ShapeCloud& cloud);
ShapeCloud shape_cloud_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ConvergenceReport& report);
std::string report_to_csv(const ConvergenceReport& report);

}  // namespace sconv::io
