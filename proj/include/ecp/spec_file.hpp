#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ecp/design_basis.hpp"
#include "ecp/pipeline.hpp"
#include "ecp/space.hpp"
#include "ecp/weights.hpp"

namespace ecp {

/// Parameter sweep over one strictly-lower-triangle connection entry.
/// `path` reads "connections/<c>/entries/<row>/<col>" (0-based indices).
struct SweepSpec {
  std::string path;
  int connection = 0;
  int row = 0;
  int col = 0;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

/// The JSON spec-file document:
///   { "interval": [a, b], "knots": [...],
///     "sections": [ {"tokens": [...]}, ... ],
///     "connections": [ [[...]] | {"entries": [[...]]} | null, ... ],
///     "sweep": {"path": ..., "from": ..., "to": ..., "steps": ...} }
/// A missing "connections" key or a null entry means the identity; a single
/// section is replicated on every interval.
struct SpecFile {
  std::pair<double, double> interval{0.0, 1.0};
  std::vector<double> knots;
  std::vector<std::vector<std::string>> sections;
  std::vector<std::optional<Eigen::MatrixXd>> connections;
  std::optional<SweepSpec> sweep;

  /// Validates and builds the space; throws Error.
  SplineSpace build() const;

  /// Copy with connection entry (row, col) of matrix `connection` set to
  /// `value` (an identity matrix is materialized first when needed).
  SpecFile with_entry(int connection, int row, int col, double value) const;
  SpecFile with_sweep_value(double value) const;
};

/// Throws Error(InvalidSpec) naming the first schema violation.
SpecFile parse_spec(const nlohmann::json& doc);
SpecFile load_spec(const std::filesystem::path& path);
nlohmann::json to_json(const SpecFile& spec);

/// Parses "connections/<c>/entries/<r>/<col>" (the "entries" segment is
/// optional) and checks it addresses a strictly-lower entry off the first
/// column.
SweepSpec parse_sweep_path(const std::string& path);

/// Report document: {"suitable", "m", "k", "failure", "warnings"} plus
/// "levels" when trace is set.
nlohmann::json report_json(const Analysis& analysis, bool trace = false);
std::string report_text(const Analysis& analysis);

/// One control point per line, comma or whitespace separated; '#' starts a
/// comment.
ControlPolygon read_control_points(std::istream& in);
ControlPolygon load_control_points(const std::filesystem::path& path);

/// %.17g formatting used by every emitted float.
std::string format_double(double v);

std::string basis_csv(const BasisTable& table);
std::string weight_csv(const WeightSample& sample);
std::string curve_csv(const CurveSample& curve);

nlohmann::json basis_json(const BasisTable& table);
nlohmann::json weights_json(const std::vector<WeightSample>& samples);
nlohmann::json curve_json(const CurveSample& curve);

}  // namespace ecp
