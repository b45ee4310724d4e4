// ecpspline: suitability test, basis/weight/curve sampling and parameter
// sweeps for piecewise Chebyshevian spline spaces.
//
// Exit codes: 0 suitable (or command succeeded), 1 unsuitable, 2 invalid input.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ecp/design_basis.hpp"
#include "ecp/error.hpp"
#include "ecp/pipeline.hpp"
#include "ecp/spec_file.hpp"
#include "ecp/sweep.hpp"
#include "ecp/weights.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kSuitable = 0;
constexpr int kUnsuitable = 1;
constexpr int kInvalid = 2;

struct Flags {
  std::string spec;
  int grid = 200;
  double tol = 1.0;
  std::string report = "json";
  bool trace = false;
  std::string out;
  std::string control;
  int samples = 100;
  int bisect = 0;
};

void write_output(const Flags& f, const std::string& name, const std::string& content) {
  if (f.out.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(f.out);
  const fs::path path = fs::path(f.out) / name;
  std::ofstream file(path, std::ios::binary);
  file << content;
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  std::cerr << "wrote " << path.string() << "\n";
}

ecp::AnalysisOptions options(const Flags& f) { return {f.tol, f.trace}; }

int run_check(const Flags& f) {
  const ecp::SplineSpace space = ecp::load_spec(f.spec).build();
  const ecp::Analysis a = ecp::analyze(space, options(f));
  if (f.report == "text") {
    write_output(f, "report.txt", ecp::report_text(a));
  } else {
    write_output(f, "report.json", ecp::report_json(a, f.trace).dump(2) + "\n");
  }
  return a.suitable ? kSuitable : kUnsuitable;
}

int run_basis(const Flags& f) {
  const ecp::SplineSpace space = ecp::load_spec(f.spec).build();
  const ecp::TransitionSet ts = ecp::compute_transitions(space);
  const ecp::DesignBasis basis(space, ts);
  write_output(f, "basis.csv", ecp::basis_csv(ecp::sample_basis(basis, f.grid)));
  return kSuitable;
}

int run_weights(const Flags& f) {
  const ecp::SplineSpace space = ecp::load_spec(f.spec).build();
  const ecp::TransitionSet ts = ecp::compute_transitions(space);
  const auto samples = ecp::sample_weights(space, ts, f.grid);
  for (const auto& s : samples)
    write_output(f, "weights_w" + std::to_string(s.level) + ".csv", ecp::weight_csv(s));
  const ecp::OracleVerdict v = ecp::positivity_scan(space, ts, f.grid);
  std::cerr << "weights " << (v.positive ? "positive" : "not positive") << "; minimum w_" << v.level
            << " = " << ecp::format_double(v.value) << " at x = " << ecp::format_double(v.x)
            << ecp::side_char(v.side) << " (interval " << v.interval << ")\n";
  return v.positive ? kSuitable : kUnsuitable;
}

int run_curve(const Flags& f) {
  if (f.control.empty()) throw ecp::Error(ecp::ErrorCode::InvalidSpec, "--control is required");
  if (f.samples < 2) throw ecp::Error(ecp::ErrorCode::InvalidSpec, "--samples must be >= 2");
  const ecp::SplineSpace space = ecp::load_spec(f.spec).build();
  const ecp::ControlPolygon poly = ecp::load_control_points(f.control);
  const ecp::TransitionSet ts = ecp::compute_transitions(space);
  const ecp::DesignBasis basis(space, ts);
  write_output(f, "curve.csv", ecp::curve_csv(ecp::sample_curve(basis, poly, f.samples)));
  return kSuitable;
}

int run_sweep(const Flags& f) {
  const ecp::SpecFile spec = ecp::load_spec(f.spec);
  if (!spec.sweep) throw ecp::Error(ecp::ErrorCode::InvalidSpec, "sweep: missing from the spec file");
  const auto rows = ecp::run_sweep(spec, options(f));
  std::ostringstream table;
  table << "value,suitable\n";
  for (const auto& r : rows) table << ecp::format_double(r.value) << "," << (r.suitable ? 1 : 0) << "\n";
  write_output(f, "sweep.csv", table.str());

  if (f.bisect > 0) {
    for (std::size_t p = 1; p < rows.size(); ++p) {
      if (rows[p].suitable == rows[p - 1].suitable) continue;
      const auto flip = ecp::bisect_flip(spec, rows[p - 1].value, rows[p].value, f.bisect, 0.0,
                                         options(f));
      std::cout << "flip between " << ecp::format_double(flip.lower) << " ("
                << (flip.lower_suitable ? "suitable" : "unsuitable") << ") and "
                << ecp::format_double(flip.upper) << " ("
                << (flip.lower_suitable ? "unsuitable" : "suitable") << ")\n";
    }
  }
  return kSuitable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suitability-for-design test for piecewise Chebyshevian spline spaces"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("SPEC", f.spec, "JSON spec file")->required();
    sub->add_option("--grid", f.grid, "sample points per interval")->check(CLI::Range(2, 1000000));
    sub->add_option("--tol", f.tol, "scale factor of the monotonicity tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--report", f.report, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--trace", f.trace, "keep every recursion level in the report");
    sub->add_option("--out", f.out, "output directory (stdout when omitted)");
  };

  auto* check = app.add_subcommand("check", "decide whether the space is suitable for design");
  auto* basis = app.add_subcommand("basis", "sample the normalized Bernstein basis as CSV");
  auto* weights = app.add_subcommand("weights", "sample the weight functions, one CSV per level");
  auto* curve = app.add_subcommand("curve", "sample a parametric curve as CSV");
  auto* sweep = app.add_subcommand("sweep", "run check over the spec's sweep parameter");
  for (auto* sub : {check, basis, weights, curve, sweep}) add_common(sub);
  curve->add_option("--control", f.control, "control point CSV, one point per line")->required();
  curve->add_option("--samples", f.samples, "curve samples per interval");
  sweep->add_option("--bisect", f.bisect, "bisection steps to refine each verdict flip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (*check) return run_check(f);
    if (*basis) return run_basis(f);
    if (*weights) {
      if (f.out.empty()) f.out = ".";
      return run_weights(f);
    }
    if (*curve) return run_curve(f);
    if (*sweep) return run_sweep(f);
  } catch (const ecp::SingularSystemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnsuitable;
  } catch (const ecp::Error& e) {
    std::cerr << "error [" << ecp::to_string(e.code()) << "]: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
