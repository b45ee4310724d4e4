#include <gtest/gtest.h>

#include "ecp/error.hpp"
#include "ecp/pipeline.hpp"
#include "properties.hpp"

using namespace ecp;
using namespace ecp::oracle;

namespace {

void expect_ok(const Worst& w, const char* what, int seed) {
  EXPECT_TRUE(w.ok()) << what << " seed " << seed << ": ratio " << w.ratio << " at " << w.where;
}

}  // namespace

TEST(Properties, RandomSpaces) {
  int solved = 0, suitable = 0;
  for (int seed = 0; seed < 80; ++seed) {
    SpaceGen gen(1000 + seed);
    const SplineSpace s = gen.space();
    const Analysis a = analyze(s);
    if (!a.transitions) continue;
    ++solved;
    const TransitionSet& ts = *a.transitions;
    expect_ok(boundary_residuals(s, ts), "boundary", seed);
    expect_ok(connection_residuals(s, ts), "connection", seed);
    const DesignBasis b = bernstein_basis(s, ts);
    expect_ok(partition_of_unity(b, 40), "partition", seed);
    expect_ok(affine_invariance(b, gen), "affine", seed);
    try {
      const CoeffTensor t = to_bernstein_coeffs(s, ts);
      expect_ok(endpoint_interpolation(s, ts, t), "endpoint", seed);
    } catch (const Error&) {
    }
    if (a.suitable) {
      ++suitable;
      if (s.knot_count() <= 2) expect_ok(quadrature_identity(s, ts, 2, 3), "quadrature", seed);
    }
  }
  EXPECT_GT(solved, 70);
  EXPECT_GT(suitable, 10);
}

TEST(Properties, QuadratureDepthThree) {
  for (const SplineSpace& s : {example1_space(), example2_space(Family::a, 10.0),
                               example2_space(Family::b, 0.0)}) {
    const TransitionSet ts = compute_transitions(s);
    expect_ok(quadrature_identity(s, ts, 3, 4), "quadrature r<=3", 0);
  }
}
