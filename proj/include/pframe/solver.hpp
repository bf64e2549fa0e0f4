#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pframe/dense.hpp"
#include "pframe/model.hpp"

namespace pframe {

struct Perturbation {
  int node = -1;
  double moment = 0.0;  ///< 0 disables the perturbed restart
};

struct SolverConfig {
  double tol = 1e-9;   ///< scaled residual bound for the global Newton loop
  int max_iter = 30;
  bool eigen_check = false;
  bool record_shapes = false;  ///< keep per-element deformed grids in the results
  Perturbation perturbation;
  ShootingConfig shooting;  ///< element defaults; segment counts come from the model

  /// Reject models whose initial tangent is not positive definite
  /// (insufficient constraints against rigid-body motion).
  bool check_initial_stability = true;
};

/// Load factors per step; prescribed-displacement targets are taken from the
/// constraint histories at the same step index.
struct Schedule {
  std::vector<double> load_factors;
  int n_steps() const { return static_cast<int>(load_factors.size()); }

  static Schedule proportional(int steps, double final_factor = 1.0);
};

/// Deformed grid of one element mapped to global coordinates.
struct ElementShape {
  int element = -1;
  std::vector<double> x;       ///< undeformed arc coordinate
  std::vector<double> X;       ///< deformed global x of the grid points
  std::vector<double> Z;       ///< deformed global z of the grid points
  std::vector<double> phi;     ///< rotation relative to the co-rotated frame
  std::vector<double> moment;  ///< bending moment at grid points
  std::vector<double> normal_mid;  ///< normal force at segment midpoints
};

struct StepResult {
  int step = 0;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> dof_values;  ///< per slot
  std::vector<double> reactions;   ///< per slot; nonzero only at constrained slots
  std::optional<double> min_eigenvalue;
  std::vector<double> residual_history;  ///< scaled norm before each update and at exit
  std::vector<ElementShape> shapes;
};

struct AnalysisResult {
  std::vector<StepResult> steps;
  bool completed = false;
  std::string failure;  ///< diagnostic for a halted run
};

struct AssembleResult {
  std::vector<double> internal;  ///< elastic end forces gathered per slot
  DenseMatrix tangent;           ///< free-DOF tangent stiffness
  std::vector<EndForces> forces;         ///< converged per-element end forces
  std::vector<LocalEndDisplacements> locals;
  std::vector<IntegrationGrid> grids;
};

/// Runs the element pipeline (phase-A reduction, shooting solve, force
/// recovery, consistent tangent) for every element and scatters the results.
/// `warm` carries the per-element end forces across calls and is updated in
/// place. Throws ElementSolveError with the element id on failure.
AssembleResult assemble(const Model& model, const DofMap& dofs,
                        const std::vector<double>& state,
                        std::vector<EndForces>& warm, const ShootingConfig& shooting);

/// One incremental step under the given load factor; prescribed slots are
/// set to their step targets before the first iteration. Throws
/// NonConvergenceError when max_iter is exhausted.
StepResult solve_step(const Model& model, const DofMap& dofs,
                      std::vector<double>& state, std::vector<EndForces>& warm,
                      double lambda, int step_index, const SolverConfig& cfg);

/// Smallest eigenvalue of the (symmetric) tangent matrix.
double min_eigenvalue_of(const DenseMatrix& tangent);

/// Solves an auxiliary equilibrium with an extra moment at the given node on
/// top of the current loads and returns that state as a Newton starting
/// point; the moment is not part of the subsequent loading.
void perturbed_restart(const Model& model, const DofMap& dofs,
                       std::vector<double>& state, std::vector<EndForces>& warm,
                       double lambda, int step_index, const SolverConfig& cfg);

/// Sequential incremental analysis with warm-started element forces. Stops
/// at the first non-converged step and returns the partial history.
AnalysisResult run_analysis(const Model& model, const Schedule& schedule,
                            const SolverConfig& cfg);

}  // namespace pframe
