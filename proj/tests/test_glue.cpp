#include <gtest/gtest.h>

#include <numbers>

#include "hypervol/catalog.hpp"
#include "hypervol/error.hpp"
#include "hypervol/glue.hpp"

using namespace hypervol;

namespace {

constexpr double kPi = std::numbers::pi;

DecompositionPlan plan_for(const PlanarTrivalentGraph& g, std::initializer_list<const char*> trace = {}) {
  if (trace.size() == 0) return plan_from_trace(g, reduce(g));
  std::vector<Move> ms;
  for (const char* m : trace) ms.push_back(parse_move(m));
  return plan_from_trace(g, replay(g, ms));
}

PlanarTrivalentGraph prism() { return catalog_entry("prism-235").graph; }

std::vector<double> fd_gradient(const DecompositionPlan& plan, const std::vector<double>& l, double h) {
  std::vector<double> g(l.size());
  for (size_t i = 0; i < l.size(); ++i) {
    auto lo = l, hi = l;
    lo[i] -= h;
    hi[i] += h;
    g[i] = (potential(plan, hi) - potential(plan, lo)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST(Spec, AnglesRequired) {
  PolyhedronSpec s{"pleated", pleated_prism_graph()};
  try {
    s.validate();
    ADD_FAILURE() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("angles required"), std::string::npos);
  }
  EXPECT_NO_THROW((PolyhedronSpec{"prism", prism()}.validate()));
}

TEST(Prism, SolvesToPublishedVolume) {
  DecompositionPlan plan = plan_for(prism());
  GluingSolution s = solve(plan);
  ASSERT_EQ(s.lengths.size(), 1u);
  EXPECT_NEAR(s.volume, 2.63200, 1e-4);
  EXPECT_NEAR(s.lengths[0], 0.5067207574, 1e-9);
  EXPECT_LE(std::abs(s.residuals[0]), 1e-10);
  PlanEvaluation ev = evaluate_plan(plan, s.lengths);
  for (const auto& t : ev.tetrahedra) {
    EXPECT_EQ(t.type, TruncationType::P4);
    for (int k = 0; k < 6; ++k)
      if (t.a_dv_da[k] != cplx(0.0, 0.0)) EXPECT_NEAR(t.angle[k], 2 * kPi / 5, 1e-8);
  }
  EXPECT_EQ(s.alternatives.size(), 1u);
  EXPECT_TRUE(s.multiplicity_note.empty());
}

TEST(Potential, CriticalValueIsVolume) {
  DecompositionPlan plan = plan_for(prism());
  GluingSolution s = solve(plan);
  EXPECT_NEAR(potential(plan, s.lengths), s.volume, 1e-10);
  // Away from the root: Phi = sum Vol + 1/2 sum l alpha - pi sum l.
  for (double l : {0.3, 0.8, 1.5}) {
    PlanEvaluation ev = evaluate_plan(plan, {l});
    double expect = ev.volume - kPi * l;
    for (const auto& t : ev.tetrahedra)
      for (int k = 0; k < 6; ++k)
        if (plan.tetrahedra[0].slots[k].is_length) expect += 0.5 * l * t.angle[k];
    EXPECT_NEAR(potential(plan, {l}), expect, 1e-10);
    EXPECT_NEAR(ev.potential, expect, 1e-10);
  }
}

TEST(Potential, EmptyPlanIsPlainVolume) {
  PlanarTrivalentGraph g = catalog_entry("tetrahedron-regular:1/3").graph;
  DecompositionPlan plan = plan_for(g);
  ASSERT_TRUE(plan.length_variables.empty());
  ASSERT_EQ(plan.tetrahedra.size(), 1u);
  EXPECT_NEAR(potential(plan, {}), 1.0149416064, 1e-9);
  GluingSolution s = solve(plan);
  EXPECT_NEAR(s.volume, 1.0149416064, 1e-9);
}

TEST(Potential, GradientIsMinusResidual) {
  for (auto g : {prism(), dodecahedron_graph()}) {
    if (!g.has_all_angles()) set_all_angles(g, {1, 2});
    DecompositionPlan plan = plan_for(g);
    GluingSolution s = solve(plan);
    std::vector<double> l = s.lengths;
    for (double& x : l) x *= 1.07;
    std::vector<double> fd = fd_gradient(plan, l, 1e-5), res = residual(plan, l);
    PlanEvaluation ev = evaluate_plan(plan, l, true);
    for (size_t i = 0; i < l.size(); ++i) {
      EXPECT_NEAR(fd[i], -res[i], 1e-7);
      EXPECT_NEAR(ev.residual[i], res[i], 1e-14);
    }
    // Jacobian against differences of the residual.
    for (size_t j = 0; j < l.size(); ++j) {
      auto lo = l, hi = l;
      lo[j] -= 1e-6;
      hi[j] += 1e-6;
      auto rlo = residual(plan, lo), rhi = residual(plan, hi);
      for (size_t i = 0; i < l.size(); ++i) EXPECT_NEAR(ev.jacobian[i][j], (rhi[i] - rlo[i]) / 2e-6, 1e-5);
    }
  }
}

TEST(Potential, SingleSignChangeOnPrism) {
  DecompositionPlan plan = plan_for(prism());
  int changes = 0, points = 0;
  double prev = 0.0;
  for (int i = 1; i <= 500; ++i) {
    double l = 0.01 * i;
    double r;
    try {
      r = residual(plan, {l})[0];
    } catch (const Error&) {
      continue;
    }
    if (points > 0 && (r > 0) != (prev > 0)) ++changes;
    prev = r;
    ++points;
  }
  EXPECT_GT(points, 400);
  EXPECT_EQ(changes, 1);
  double root = solve(plan).lengths[0];
  EXPECT_LT(residual(plan, {root - 0.01})[0] * residual(plan, {root + 0.01})[0], 0.0);
}

TEST(Potential, DefectIsQuadratic) {
  DecompositionPlan plan = plan_for(prism());
  GluingSolution s = solve(plan);
  double phi0 = potential(plan, s.lengths);
  std::vector<double> ratios;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    std::vector<double> l{s.lengths[0] + d};
    double defect = std::abs(residual(plan, l)[0]);
    ratios.push_back(std::abs(potential(plan, l) - phi0) / (defect * defect));
  }
  // |Phi - Phi*| ~ r^2 / (2 |r'|) with the same constant at every scale.
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.05);
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 0.05);
}

TEST(Dodecahedra, PublishedVolumes) {
  PlanarTrivalentGraph d1 = catalog_entry("dodecahedron-right-angled").graph;
  DecompositionPlan p1 = plan_for(d1);
  GluingSolution s1 = solve(p1);
  EXPECT_NEAR(s1.volume, 4.30621, 1e-3);
  EXPECT_EQ(s1.alternatives.size(), 1u);
  PlanarTrivalentGraph d2 = catalog_entry("dodecahedron-pi3").graph;
  GluingSolution s2 = solve(plan_for(d2));
  EXPECT_NEAR(s2.volume, 20.5802, 1e-3);
  for (const auto* s : {&s1, &s2}) {
    for (double r : s->residuals) EXPECT_LE(std::abs(r), 1e-10);
  }
  CertificateReport c = is_width_uniform_certificate(p1, s1);
  EXPECT_TRUE(c.clean) << (c.flags.empty() ? "" : c.flags[0]);
}

TEST(Solve, CriticalPointAtEverySolution) {
  for (const char* name : {"prism-235", "dodecahedron-right-angled", "dodecahedron-pi3"}) {
    DecompositionPlan plan = plan_for(catalog_entry(name).graph);
    GluingSolution s = solve(plan);
    for (const auto& alt : s.alternatives) {
      for (double g : fd_gradient(plan, alt.lengths, 1e-5)) EXPECT_LE(std::abs(g), 1e-6) << name;
      EXPECT_LE(alt.residual_norm, 1e-10);
    }
  }
}

TEST(Solve, PlanIndependence) {
  PlanarTrivalentGraph g = prism();
  GluingSolution a = solve(plan_for(g));
  DecompositionPlan alt = plan_for(g, {"ih:0", "cap:1", "cap:2", "ih:0", "cap:6"});
  EXPECT_EQ(alt.length_variables.size(), 2u);
  GluingSolution b = solve(alt);
  EXPECT_NEAR(a.volume, b.volume, 1e-6);
}

TEST(Solve, DeterministicUnderSeed) {
  DecompositionPlan plan = plan_for(catalog_entry("dodecahedron-pi3").graph);
  SolveOptions o;
  o.seed = 42;
  GluingSolution a = solve(plan, o), b = solve(plan, o);
  EXPECT_EQ(a.lengths, b.lengths);
  EXPECT_EQ(a.volume, b.volume);
  EXPECT_EQ(a.alternatives.size(), b.alternatives.size());
  EXPECT_EQ(a.converged_starts, b.converged_starts);
  o.seed = 7;
  GluingSolution c = solve(plan, o);
  EXPECT_NEAR(c.volume, a.volume, 1e-9);
}

TEST(Solve, InfeasibleOrNonconvergentReported) {
  // All angles near pi/2 except for a prism whose lateral angles close too early.
  PlanarTrivalentGraph g = prism_graph(5);
  set_all_angles(g, {1, 2});
  EXPECT_THROW(solve(plan_for(g)), InfeasibleError);
}

TEST(Certificate, CleanAndFlagged) {
  DecompositionPlan plan = plan_for(prism());
  GluingSolution s = solve(plan);
  CertificateReport c = is_width_uniform_certificate(plan, s);
  EXPECT_TRUE(c.clean);
  EXPECT_TRUE(c.flags.empty());

  GluingSolution off = s;
  off.lengths[0] += 0.05;
  EXPECT_FALSE(is_width_uniform_certificate(plan, off).clean);

  GluingSolution twice = s;
  twice.alternatives.push_back(s.alternatives[0]);
  twice.alternatives.back().lengths[0] += 1.0;
  CertificateReport m = is_width_uniform_certificate(plan, twice);
  EXPECT_FALSE(m.clean);
  EXPECT_NE(m.flags[0].find("butterfly"), std::string::npos);
}
