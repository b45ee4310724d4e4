#include "ecp/sweep.hpp"

#include <cmath>

#include "ecp/error.hpp"

namespace ecp {

bool suitable_at(const SpecFile& spec, double value, const AnalysisOptions& options) {
  return analyze(spec.with_sweep_value(value).build(), options).suitable;
}

std::vector<SweepRow> run_sweep(const SpecFile& spec, const AnalysisOptions& options) {
  if (!spec.sweep) throw Error(ErrorCode::InvalidSpec, "sweep: missing from the spec file");
  const auto& s = *spec.sweep;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(s.steps) + 1);
  for (int p = 0; p <= s.steps; ++p) {
    const double v = p == s.steps ? s.to : s.from + (s.to - s.from) * p / s.steps;
    rows.push_back({v, suitable_at(spec, v, options)});
  }
  return rows;
}

int count_flips(const std::vector<SweepRow>& rows) {
  int flips = 0;
  for (std::size_t p = 1; p < rows.size(); ++p)
    if (rows[p].suitable != rows[p - 1].suitable) ++flips;
  return flips;
}

FlipSearch bisect_flip(const SpecFile& spec, double lo, double hi, int max_iterations, double tol,
                       const AnalysisOptions& options) {
  FlipSearch out;
  const bool lo_ok = suitable_at(spec, lo, options);
  const bool hi_ok = suitable_at(spec, hi, options);
  out.tested.push_back({lo, lo_ok});
  out.tested.push_back({hi, hi_ok});
  out.lower = lo;
  out.upper = hi;
  out.lower_suitable = lo_ok;
  if (lo_ok == hi_ok) return out;
  out.found = true;
  while (out.iterations < max_iterations && std::abs(out.upper - out.lower) > tol) {
    const double mid = out.midpoint();
    const bool ok = suitable_at(spec, mid, options);
    out.tested.push_back({mid, ok});
    ++out.iterations;
    if (ok == lo_ok) out.lower = mid;
    else out.upper = mid;
  }
  return out;
}

}  // namespace ecp
