#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypervol/graph.hpp"

namespace hypervol {

struct PolyhedronSpec {
  std::string name;
  PlanarTrivalentGraph graph;
  void validate() const;
};

// Values of the plan's length variables, in plan.length_variables order.
using LengthAssignment = std::vector<double>;

struct PlanEvaluation {
  double volume = 0.0;
  double potential = 0.0;
  std::vector<double> residual;                 // pi - (1/2) sum of angles, per variable
  std::vector<std::vector<double>> jacobian;    // d residual_i / d l_j
  std::vector<TetraEvaluation> tetrahedra;
};

PlanEvaluation evaluate_plan(const DecompositionPlan& plan, const LengthAssignment& lengths,
                             bool need_jacobian = false);

// Sum over tetrahedra of (Vol + (1/2) sum l * angle) minus pi * sum l. Its
// gradient is minus the residual and its critical value is the volume.
double potential(const DecompositionPlan& plan, const LengthAssignment& lengths);
std::vector<double> residual(const DecompositionPlan& plan, const LengthAssignment& lengths);

struct SolveOptions {
  double tol = 1e-10;
  double l_max = 5.0;
  int grid_per_axis = 8;
  int max_grid_dimension = 2;   // above this, seeded random starts replace the grid
  int random_starts = 64;
  std::uint64_t seed = 1;
  int max_iterations = 80;
  double initial_guess = 0.5;
  double distinct_tol = 1e-6;
};

struct CandidateSolution {
  LengthAssignment lengths;
  double volume = 0.0;
  std::vector<double> residuals;
  double residual_norm = 0.0;
  double total_length = 0.0;
};

struct GluingSolution {
  std::vector<FacePair> variables;
  LengthAssignment lengths;
  double volume = 0.0;
  std::vector<double> residuals;
  std::vector<CandidateSolution> alternatives;  // every distinct solution, primary first
  std::vector<std::string> multiplicity_note;
  int starts = 0;
  int feasible_starts = 0;
  int converged_starts = 0;
};

GluingSolution solve(const DecompositionPlan& plan, const SolveOptions& options = {});

struct CertificateReport {
  bool clean = true;
  std::vector<std::string> flags;
};

CertificateReport is_width_uniform_certificate(const DecompositionPlan& plan, const GluingSolution& solution);

}  // namespace hypervol
