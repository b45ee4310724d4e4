#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ecp/design_basis.hpp"
#include "ecp/error.hpp"
#include "ecp/pipeline.hpp"
#include "ecp/spec_file.hpp"
#include "ecp/sweep.hpp"
#include "ecp/weights.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Specs cross the boundary as JSON text; the Python side does the dumping.
ecp::SpecFile spec_from(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ecp::Error(ecp::ErrorCode::InvalidSpec, std::string("spec is not valid JSON: ") + e.what());
  }
  return ecp::parse_spec(doc);
}

// Solve the transitions; unlike analyze(), failures here surface as errors.
struct Solved {
  ecp::SplineSpace space;
  ecp::TransitionSet ts;
};

Solved solve(const std::string& spec) {
  ecp::SplineSpace space = spec_from(spec).build();
  ecp::TransitionSet ts = ecp::compute_transitions(space);
  return {std::move(space), std::move(ts)};
}

py::dict grid_dict(const std::vector<ecp::GridPoint>& grid) {
  Eigen::VectorXd x(grid.size());
  Eigen::VectorXi interval(grid.size());
  py::list side;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    x[p] = grid[p].x;
    interval[p] = grid[p].interval;
    side.append(grid[p].side == ecp::Side::plus ? "+" : "-");
  }
  py::dict d;
  d["x"] = x;
  d["side"] = side;
  d["interval"] = interval;
  return d;
}

ecp::AnalysisOptions options(double tol, bool trace) {
  if (!(tol > 0.0)) throw ecp::Error(ecp::ErrorCode::InvalidSpec, "tol must be positive");
  return {tol, trace};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of ecpspline";

  static py::exception<ecp::Error> error(m, "NativeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ecp::Error& e) {
      // args = (code, message); the package re-raises it as EcpError
      py::tuple args = py::make_tuple(std::string(ecp::to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def(
      "check",
      [](const std::string& spec, double tol, bool trace) {
        const ecp::SplineSpace space = spec_from(spec).build();
        return ecp::report_json(ecp::analyze(space, options(tol, trace)), trace).dump();
      },
      py::arg("spec"), py::arg("tol") = 1.0, py::arg("trace") = false,
      "Suitability report as JSON text.");

  m.def(
      "basis",
      [](const std::string& spec, int samples) {
        const Solved s = solve(spec);
        const ecp::BasisTable t =
            ecp::sample_basis(ecp::bernstein_basis(s.space, s.ts), samples);
        py::dict d = grid_dict(t.grid);
        d["values"] = t.values;
        return d;
      },
      py::arg("spec"), py::arg("samples") = 50);

  m.def(
      "weights",
      [](const std::string& spec, int samples) {
        const Solved s = solve(spec);
        py::list levels;
        for (const ecp::WeightSample& w : ecp::sample_weights(s.space, s.ts, samples)) {
          py::dict d = grid_dict(w.grid);
          d["level"] = w.level;
          d["values"] = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
              w.values.data(), static_cast<Eigen::Index>(w.values.size())));
          levels.append(d);
        }
        return levels;
      },
      py::arg("spec"), py::arg("samples") = 50);

  m.def(
      "positivity",
      [](const std::string& spec, int samples) {
        const Solved s = solve(spec);
        const ecp::OracleVerdict v = ecp::positivity_scan(s.space, s.ts, samples);
        py::dict d;
        d["positive"] = v.positive;
        d["level"] = v.level;
        d["interval"] = v.interval;
        d["x"] = v.x;
        d["value"] = v.value;
        d["level_min"] = v.level_min;
        return d;
      },
      py::arg("spec"), py::arg("samples") = 200);

  m.def(
      "curve",
      [](const std::string& spec, const Eigen::MatrixXd& points, int samples) {
        const Solved s = solve(spec);
        const ecp::CurveSample c =
            ecp::sample_curve(ecp::bernstein_basis(s.space, s.ts), {points}, samples);
        py::dict d = grid_dict(c.grid);
        d["points"] = c.points;
        return d;
      },
      py::arg("spec"), py::arg("points"), py::arg("samples") = 50);

  m.def(
      "sweep",
      [](const std::string& spec, double tol) {
        const ecp::SpecFile sf = spec_from(spec);
        if (!sf.sweep) throw ecp::Error(ecp::ErrorCode::InvalidSpec, "spec has no sweep");
        std::vector<std::pair<double, bool>> rows;
        for (const ecp::SweepRow& r : ecp::run_sweep(sf, options(tol, false)))
          rows.emplace_back(r.value, r.suitable);
        return rows;
      },
      py::arg("spec"), py::arg("tol") = 1.0);

  m.def(
      "bisect",
      [](const std::string& spec, double lo, double hi, int iterations, double tol) {
        const ecp::FlipSearch f = ecp::bisect_flip(spec_from(spec), lo, hi, iterations, tol);
        py::dict d;
        d["found"] = f.found;
        d["lower"] = f.lower;
        d["upper"] = f.upper;
        d["lower_suitable"] = f.lower_suitable;
        d["iterations"] = f.iterations;
        d["tested"] = f.tested.size();
        return d;
      },
      py::arg("spec"), py::arg("lo"), py::arg("hi"), py::arg("iterations") = 40,
      py::arg("tol") = 1e-9);
}
