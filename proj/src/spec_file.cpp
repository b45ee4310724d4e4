#include "ecp/spec_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecp/error.hpp"

namespace ecp {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidSpec, message);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(where + ": expected a finite number");
  return d;
}

Eigen::MatrixXd parse_matrix(const json& v, const std::string& where) {
  const json& rows = v.is_object() && v.contains("entries") ? v.at("entries") : v;
  if (!rows.is_array() || rows.empty()) invalid(where + ": expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      invalid(rw + ": expected a row of " + std::to_string(n) + " numbers");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = number(row[c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

int parse_index(std::string_view text, const std::string& path) {
  int value = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0)
    invalid("sweep.path '" + path + "': '" + std::string(text) + "' is not an index");
  return value;
}

}  // namespace

SweepSpec parse_sweep_path(const std::string& path) {
  std::vector<std::string_view> parts;
  std::string_view rest = path;
  while (!rest.empty()) {
    const auto slash = rest.find('/');
    parts.push_back(rest.substr(0, slash));
    if (slash == std::string_view::npos) break;
    rest.remove_prefix(slash + 1);
  }
  if (parts.size() == 5 && parts[2] == "entries") parts.erase(parts.begin() + 2);
  if (parts.size() != 4 || parts[0] != "connections")
    invalid("sweep.path '" + path + "': expected connections/<c>/entries/<row>/<col>");
  SweepSpec s;
  s.path = path;
  s.connection = parse_index(parts[1], path);
  s.row = parse_index(parts[2], path);
  s.col = parse_index(parts[3], path);
  if (s.col < 1 || s.row <= s.col)
    invalid("sweep.path '" + path +
            "': must address a strictly-lower-triangle entry outside the first column");
  return s;
}

SpecFile parse_spec(const json& doc) {
  if (!doc.is_object()) invalid("spec: expected a JSON object");
  SpecFile spec;

  if (!doc.contains("interval")) invalid("interval: missing");
  const json& iv = doc.at("interval");
  if (!iv.is_array() || iv.size() != 2) invalid("interval: expected [a, b]");
  spec.interval = {number(iv[0], "interval[0]"), number(iv[1], "interval[1]")};

  if (doc.contains("knots")) {
    const json& ks = doc.at("knots");
    if (!ks.is_array()) invalid("knots: expected an array of numbers");
    for (std::size_t i = 0; i < ks.size(); ++i)
      spec.knots.push_back(number(ks[i], "knots[" + std::to_string(i) + "]"));
  }

  if (!doc.contains("sections")) invalid("sections: missing");
  const json& secs = doc.at("sections");
  if (!secs.is_array() || secs.empty()) invalid("sections: expected a non-empty array");
  for (std::size_t i = 0; i < secs.size(); ++i) {
    const std::string where = "sections[" + std::to_string(i) + "]";
    const json& s = secs[i];
    const json& toks = s.is_object() && s.contains("tokens") ? s.at("tokens") : s;
    if (!toks.is_array() || toks.empty()) invalid(where + ".tokens: expected a non-empty array");
    std::vector<std::string> names;
    for (std::size_t t = 0; t < toks.size(); ++t) {
      if (!toks[t].is_string())
        invalid(where + ".tokens[" + std::to_string(t) + "]: expected a string");
      names.push_back(toks[t].get<std::string>());
    }
    spec.sections.push_back(std::move(names));
  }

  if (doc.contains("connections") && !doc.at("connections").is_null()) {
    const json& cs = doc.at("connections");
    if (!cs.is_array()) invalid("connections: expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].is_null()) {
        spec.connections.emplace_back(std::nullopt);
      } else {
        spec.connections.emplace_back(parse_matrix(cs[i], "connections[" + std::to_string(i) + "]"));
      }
    }
  } else {
    spec.connections.assign(spec.knots.size(), std::nullopt);
  }

  if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
    const json& sw = doc.at("sweep");
    if (!sw.is_object()) invalid("sweep: expected an object");
    if (!sw.contains("path") || !sw.at("path").is_string()) invalid("sweep.path: expected a string");
    SweepSpec s = parse_sweep_path(sw.at("path").get<std::string>());
    if (!sw.contains("from")) invalid("sweep.from: missing");
    if (!sw.contains("to")) invalid("sweep.to: missing");
    s.from = number(sw.at("from"), "sweep.from");
    s.to = number(sw.at("to"), "sweep.to");
    if (!sw.contains("steps") || !sw.at("steps").is_number_integer() || sw.at("steps").get<int>() < 1)
      invalid("sweep.steps: expected a positive integer");
    s.steps = sw.at("steps").get<int>();
    if (s.connection >= static_cast<int>(spec.knots.size()))
      invalid("sweep.path '" + s.path + "': no connection matrix " + std::to_string(s.connection));
    spec.sweep = s;
  }
  return spec;
}

SplineSpace SpecFile::build() const {
  const std::size_t k = knots.size();
  if (connections.size() != k)
    throw Error(ErrorCode::CountMismatch, std::to_string(k) + " knots need " + std::to_string(k) +
                                              " connection matrices, got " +
                                              std::to_string(connections.size()));
  if (sections.empty()) throw Error(ErrorCode::CountMismatch, "no sections");
  const int m = static_cast<int>(sections.front().size());
  std::vector<ConnectionMatrix> mats;
  mats.reserve(k);
  for (const auto& c : connections)
    mats.push_back(c ? ConnectionMatrix::validate(*c) : ConnectionMatrix::identity(m));
  return build_space(interval, knots, sections, std::move(mats));
}

SpecFile SpecFile::with_entry(int connection, int row, int col, double value) const {
  SpecFile copy = *this;
  if (connection < 0 || connection >= static_cast<int>(copy.connections.size()))
    throw Error(ErrorCode::InvalidSpec, "no connection matrix " + std::to_string(connection));
  const int m = sections.empty() ? 0 : static_cast<int>(sections.front().size());
  auto& slot = copy.connections[connection];
  if (!slot) slot = Eigen::MatrixXd::Identity(m, m);
  if (row >= slot->rows() || col >= slot->cols())
    throw Error(ErrorCode::InvalidSpec, "connection entry index out of range");
  (*slot)(row, col) = value;
  return copy;
}

SpecFile SpecFile::with_sweep_value(double value) const {
  if (!sweep) throw Error(ErrorCode::InvalidSpec, "spec has no sweep");
  return with_entry(sweep->connection, sweep->row, sweep->col, value);
}

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open spec file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("spec file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_spec(doc);
}

json to_json(const SpecFile& spec) {
  json doc;
  doc["interval"] = {spec.interval.first, spec.interval.second};
  doc["knots"] = spec.knots;
  doc["sections"] = json::array();
  for (const auto& s : spec.sections) doc["sections"].push_back({{"tokens", s}});
  doc["connections"] = json::array();
  for (const auto& c : spec.connections) {
    if (!c) {
      doc["connections"].push_back(nullptr);
      continue;
    }
    json rows = json::array();
    for (Eigen::Index r = 0; r < c->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index q = 0; q < c->cols(); ++q) row.push_back((*c)(r, q));
      rows.push_back(std::move(row));
    }
    doc["connections"].push_back(std::move(rows));
  }
  if (spec.sweep)
    doc["sweep"] = {{"path", spec.sweep->path},
                    {"from", spec.sweep->from},
                    {"to", spec.sweep->to},
                    {"steps", spec.sweep->steps}};
  return doc;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json report_json(const Analysis& analysis, bool trace) {
  json doc;
  doc["suitable"] = analysis.suitable;
  doc["m"] = analysis.m;
  doc["k"] = analysis.k;
  if (analysis.failure) {
    const auto& f = *analysis.failure;
    doc["failure"] = {{"reason", std::string(to_string(f.kind))},
                      {"level", optional_json(f.level)},
                      {"interval", optional_json(f.interval)},
                      {"function", optional_json(f.function)},
                      {"coefficient", optional_json(f.coefficient)},
                      {"difference", optional_json(f.difference)},
                      {"message", f.message}};
  } else {
    doc["failure"] = nullptr;
  }
  doc["warnings"] = analysis.warnings;
  if (trace) {
    json levels = json::array();
    for (const auto& t : analysis.levels) {
      json per_interval = json::array();
      for (int i = 0; i < t.intervals(); ++i) {
        json rows = json::array();
        for (int l = 0; l < t.level(); ++l) {
          json row = json::array();
          for (int h = 0; h < t.level(); ++h) row.push_back(t(l, h, i));
          rows.push_back(std::move(row));
        }
        per_interval.push_back(std::move(rows));
      }
      levels.push_back({{"level", t.level()}, {"b", std::move(per_interval)}});
    }
    doc["levels"] = std::move(levels);
  }
  return doc;
}

std::string report_text(const Analysis& a) {
  std::ostringstream out;
  out << "suitable for design: " << (a.suitable ? "yes" : "no") << "\n";
  out << "dimension m = " << a.m << ", interior knots k = " << a.k << "\n";
  if (a.failure) {
    const auto& f = *a.failure;
    out << "failure: " << to_string(f.kind);
    if (f.level) out << ", level " << *f.level;
    if (f.interval) out << ", interval " << *f.interval;
    if (f.function) out << ", function " << *f.function;
    if (f.coefficient) out << ", coefficient " << *f.coefficient;
    if (f.difference) out << ", value " << format_double(*f.difference);
    out << "\n  " << f.message << "\n";
  }
  for (const auto& w : a.warnings) out << "warning: " << w << "\n";
  return out.str();
}

ControlPolygon read_control_points(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream fields(line);
    std::vector<double> row;
    std::string field;
    while (fields >> field) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        invalid("control points line " + std::to_string(lineno) + ": '" + field +
                "' is not a number");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      invalid("control points line " + std::to_string(lineno) + ": expected " +
              std::to_string(rows.front().size()) + " coordinates");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) invalid("control points: no points");
  ControlPolygon poly;
  poly.points.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      poly.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return poly;
}

ControlPolygon load_control_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open control point file '" + path.string() + "'");
  return read_control_points(in);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string basis_csv(const BasisTable& table) {
  std::ostringstream out;
  out << "x,side";
  for (Eigen::Index l = 0; l < table.values.cols(); ++l) out << ",B_" << l + 1;
  out << "\n";
  for (std::size_t p = 0; p < table.grid.size(); ++p) {
    out << format_double(table.grid[p].x) << "," << side_char(table.grid[p].side);
    for (Eigen::Index l = 0; l < table.values.cols(); ++l)
      out << "," << format_double(table.values(static_cast<Eigen::Index>(p), l));
    out << "\n";
  }
  return out.str();
}

std::string weight_csv(const WeightSample& sample) {
  std::ostringstream out;
  out << "x,side,w_" << sample.level << "\n";
  for (std::size_t p = 0; p < sample.grid.size(); ++p)
    out << format_double(sample.grid[p].x) << "," << side_char(sample.grid[p].side) << ","
        << format_double(sample.values[p]) << "\n";
  return out.str();
}

std::string curve_csv(const CurveSample& curve) {
  static constexpr const char* names[] = {"x", "y", "z"};
  std::ostringstream out;
  out << "t,side";
  for (Eigen::Index c = 0; c < curve.points.cols(); ++c) {
    if (c < 3) out << "," << names[c];
    else out << ",c" << c;
  }
  out << "\n";
  for (std::size_t p = 0; p < curve.grid.size(); ++p) {
    out << format_double(curve.grid[p].x) << "," << side_char(curve.grid[p].side);
    for (Eigen::Index c = 0; c < curve.points.cols(); ++c)
      out << "," << format_double(curve.points(static_cast<Eigen::Index>(p), c));
    out << "\n";
  }
  return out.str();
}

json basis_json(const BasisTable& table) {
  json rows = json::array();
  for (std::size_t p = 0; p < table.grid.size(); ++p) {
    json vals = json::array();
    for (Eigen::Index l = 0; l < table.values.cols(); ++l)
      vals.push_back(table.values(static_cast<Eigen::Index>(p), l));
    rows.push_back({{"x", table.grid[p].x},
                    {"side", std::string(1, side_char(table.grid[p].side))},
                    {"B", std::move(vals)}});
  }
  return rows;
}

json weights_json(const std::vector<WeightSample>& samples) {
  json out = json::array();
  for (const auto& s : samples) {
    json pts = json::array();
    for (std::size_t p = 0; p < s.grid.size(); ++p)
      pts.push_back({{"x", s.grid[p].x},
                     {"side", std::string(1, side_char(s.grid[p].side))},
                     {"w", std::isfinite(s.values[p]) ? json(s.values[p]) : json(nullptr)}});
    out.push_back({{"level", s.level}, {"samples", std::move(pts)}});
  }
  return out;
}

json curve_json(const CurveSample& curve) {
  json pts = json::array();
  for (std::size_t p = 0; p < curve.grid.size(); ++p) {
    json coords = json::array();
    for (Eigen::Index c = 0; c < curve.points.cols(); ++c)
      coords.push_back(curve.points(static_cast<Eigen::Index>(p), c));
    pts.push_back({{"t", curve.grid[p].x},
                   {"side", std::string(1, side_char(curve.grid[p].side))},
                   {"point", std::move(coords)}});
  }
  return pts;
}

}  // namespace ecp
