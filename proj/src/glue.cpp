#include "hypervol/glue.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hypervol/error.hpp"

namespace hypervol {

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string quad_name(const PlannedTetrahedron& t) {
  std::ostringstream os;
  os << "{" << t.faces[0] << "," << t.faces[1] << "," << t.faces[2] << "," << t.faces[3] << "}";
  return os.str();
}

bool feasible(const DecompositionPlan& plan, const LengthAssignment& l) {
  for (double x : l)
    if (!(x > 0.0) || !std::isfinite(x)) return false;
  for (const auto& t : plan.tetrahedra)
    if (!gram_signature(instantiate(t, plan, l)).hyperbolic()) return false;
  return true;
}

struct NewtonResult {
  bool converged = false;
  LengthAssignment lengths;
  PlanEvaluation eval;
};

NewtonResult newton(const DecompositionPlan& plan, LengthAssignment x, const SolveOptions& opt) {
  NewtonResult out;
  const int d = static_cast<int>(x.size());
  PlanEvaluation ev = evaluate_plan(plan, x, true);
  for (int it = 0; it < opt.max_iterations; ++it) {
    double norm = inf_norm(ev.residual);
    if (norm <= opt.tol) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd J(d, d);
    Eigen::VectorXd r(d);
    for (int i = 0; i < d; ++i) {
      r(i) = ev.residual[i];
      for (int j = 0; j < d; ++j) J(i, j) = ev.jacobian[i][j];
    }
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      LengthAssignment trial(x);
      for (int i = 0; i < d; ++i) trial[i] += t * step(i);
      if (!feasible(plan, trial)) continue;
      PlanEvaluation te;
      try {
        te = evaluate_plan(plan, trial, true);
      } catch (const Error&) {
        continue;
      }
      if (inf_norm(te.residual) < (1.0 - 1e-4 * t) * norm || inf_norm(te.residual) <= opt.tol) {
        x = trial;
        ev = std::move(te);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.converged = inf_norm(ev.residual) <= opt.tol;
  out.lengths = x;
  out.eval = std::move(ev);
  return out;
}

}  // namespace

void PolyhedronSpec::validate() const {
  graph.validate();
  for (int e : graph.live_edges()) {
    auto a = graph.angle(e);
    if (!a) throw ValidationError(name + ": angles required (edge " + std::to_string(e) + " has none)");
    if (!(a->radians() > 0.0 && a->radians() < kPi))
      throw ValidationError(name + ": angle on edge " + std::to_string(e) + " outside (0, pi)");
  }
}

PlanEvaluation evaluate_plan(const DecompositionPlan& plan, const LengthAssignment& lengths, bool need_jacobian) {
  const size_t d = plan.length_variables.size();
  if (lengths.size() != d) throw ValidationError("length assignment does not match the plan's variables");
  PlanEvaluation out;
  out.residual.assign(d, kPi);
  if (need_jacobian) out.jacobian.assign(d, std::vector<double>(d, 0.0));
  double length_sum = 0.0;
  for (double l : lengths) length_sum += l;
  for (const auto& t : plan.tetrahedra) {
    TetrahedronShape shape = instantiate(t, plan, lengths);
    TetraEvaluation te;
    try {
      te = evaluate(shape, need_jacobian);
    } catch (const InfeasibleError& err) {
      throw InfeasibleError("tetrahedron " + quad_name(t) + ": " + err.what());
    }
    out.volume += te.volume;
    out.potential += te.volume;
    for (int k = 0; k < 6; ++k) {
      if (!t.slots[k].is_length) continue;
      int vi = plan.variable_index(t.slots[k].variable);
      out.residual[vi] -= 0.5 * te.angle[k];
      out.potential += 0.5 * shape.params[k].value * te.angle[k];
      if (!need_jacobian) continue;
      for (int m = 0; m < 6; ++m) {
        if (!t.slots[m].is_length) continue;
        int vj = plan.variable_index(t.slots[m].variable);
        out.jacobian[vi][vj] -= 0.5 * te.dangle_dlength[k][m];
      }
    }
    out.tetrahedra.push_back(te);
  }
  out.potential -= kPi * length_sum;
  return out;
}

double potential(const DecompositionPlan& plan, const LengthAssignment& lengths) {
  return evaluate_plan(plan, lengths).potential;
}

std::vector<double> residual(const DecompositionPlan& plan, const LengthAssignment& lengths) {
  return evaluate_plan(plan, lengths).residual;
}

GluingSolution solve(const DecompositionPlan& plan, const SolveOptions& opt) {
  GluingSolution sol;
  sol.variables = plan.length_variables;
  const int d = static_cast<int>(plan.length_variables.size());
  if (d == 0) {
    PlanEvaluation ev = evaluate_plan(plan, {});
    sol.volume = ev.volume;
    sol.alternatives.push_back({{}, ev.volume, {}, 0.0, 0.0});
    sol.starts = sol.feasible_starts = sol.converged_starts = 1;
    return sol;
  }

  std::vector<LengthAssignment> starts;
  starts.push_back(LengthAssignment(d, opt.initial_guess));
  if (d <= opt.max_grid_dimension) {
    long total = 1;
    for (int i = 0; i < d; ++i) total *= opt.grid_per_axis;
    for (long n = 0; n < total; ++n) {
      LengthAssignment x(d);
      long m = n;
      for (int i = 0; i < d; ++i) {
        x[i] = (static_cast<double>(m % opt.grid_per_axis) + 0.5) * opt.l_max / opt.grid_per_axis;
        m /= opt.grid_per_axis;
      }
      starts.push_back(x);
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, opt.l_max);
    for (int n = 0; n < opt.random_starts; ++n) {
      LengthAssignment x(d);
      for (double& v : x) {
        do v = u(rng);
        while (v <= 0.0);
      }
      starts.push_back(x);
    }
  }

  std::vector<CandidateSolution> found;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& x0 : starts) {
    ++sol.starts;
    if (!feasible(plan, x0)) continue;
    ++sol.feasible_starts;
    NewtonResult nr;
    try {
      nr = newton(plan, x0, opt);
    } catch (const Error&) {
      continue;
    }
    best_residual = std::min(best_residual, inf_norm(nr.eval.residual));
    if (!nr.converged) continue;
    ++sol.converged_starts;
    CandidateSolution c{nr.lengths, nr.eval.volume, nr.eval.residual, inf_norm(nr.eval.residual), 0.0};
    for (double l : c.lengths) c.total_length += l;
    bool dup = false;
    for (const auto& f : found) {
      double dist = 0.0;
      for (int i = 0; i < d; ++i) dist = std::max(dist, std::abs(f.lengths[i] - c.lengths[i]));
      if (dist <= opt.distinct_tol) dup = true;
    }
    if (!dup) found.push_back(c);
  }
  if (sol.feasible_starts == 0)
    throw InfeasibleError("no realizable region found: some common perpendicular may not exist");
  if (found.empty()) {
    std::ostringstream os;
    os << "Newton did not converge from any start; best residual " << best_residual;
    throw InfeasibleError(os.str());
  }
  // Residuals below tolerance are treated as equal; then the shortest total length wins.
  std::sort(found.begin(), found.end(), [&](const CandidateSolution& a, const CandidateSolution& b) {
    double ra = std::max(a.residual_norm, opt.tol), rb = std::max(b.residual_norm, opt.tol);
    if (ra != rb) return ra < rb;
    return a.total_length < b.total_length;
  });
  sol.alternatives = found;
  sol.lengths = found.front().lengths;
  sol.volume = found.front().volume;
  sol.residuals = found.front().residuals;
  if (found.size() > 1) {
    std::ostringstream os;
    os << found.size() << " distinct solutions; possible butterfly tetrahedra. Volumes:";
    for (const auto& f : found) os << " " << f.volume;
    sol.multiplicity_note.push_back(os.str());
  }
  return sol;
}

CertificateReport is_width_uniform_certificate(const DecompositionPlan& plan, const GluingSolution& s) {
  CertificateReport rep;
  auto flag = [&](const std::string& m) {
    rep.clean = false;
    rep.flags.push_back(m);
  };
  for (size_t i = 0; i < s.lengths.size(); ++i)
    if (!(s.lengths[i] > 0.0)) flag("non-positive length for variable " + std::to_string(i));
  if (s.alternatives.size() > 1) flag("multiple gluing solutions: overlap (butterfly) possible");
  PlanEvaluation ev = evaluate_plan(plan, s.lengths);
  for (size_t i = 0; i < ev.residual.size(); ++i)
    if (std::abs(ev.residual[i]) > 1e-8) flag("angle sum around variable " + std::to_string(i) + " does not close");
  for (size_t n = 0; n < plan.tetrahedra.size(); ++n) {
    const auto& te = ev.tetrahedra[n];
    for (int k = 0; k < 6; ++k) {
      if (!plan.tetrahedra[n].slots[k].is_length) continue;
      double raw = 2.0 * te.a_dv_da[k].real();
      if (raw > kPi)
        flag("tetrahedron " + quad_name(plan.tetrahedra[n]) + " slot a" + std::to_string(k + 1) +
             ": angle before reduction is " + std::to_string(raw));
      if (!(te.angle[k] > 0.0 && te.angle[k] < kPi)) flag("recovered angle outside (0, pi)");
    }
  }
  return rep;
}

}  // namespace hypervol
