#pragma once

#include <vector>

#include "pframe/dense.hpp"

namespace pframe {

struct SectionProperties {
  double EA = 0.0;  ///< axial stiffness
  double EI = 0.0;  ///< flexural stiffness
};

/// Left-end force components and moment in the co-rotational element frame.
/// These are the integration constants of the equilibrium ODEs and the
/// unknowns of the element-level shooting solve.
struct EndForces {
  double X = 0.0;
  double Z = 0.0;
  double M = 0.0;
};

/// Displacements and rotation of the right end relative to the co-rotated
/// left end (the deformational part of the element motion).
struct LocalEndDisplacements {
  double u = 0.0;
  double w = 0.0;
  double phi = 0.0;
};

/// Per-element finite-difference grid produced by the explicit integrator.
/// Full-step arrays have N+1 entries, mid-step arrays N entries.
struct IntegrationGrid {
  int segments = 0;
  double dx = 0.0;
  std::vector<double> x;        ///< grid coordinates
  std::vector<double> phi;      ///< rotation at grid points
  std::vector<double> u;        ///< axial displacement at grid points
  std::vector<double> w;        ///< transverse displacement at grid points
  std::vector<double> moment;   ///< bending moment at grid points
  std::vector<double> phi_mid;  ///< rotation at segment midpoints
  std::vector<double> normal_mid;  ///< normal force at segment midpoints

  LocalEndDisplacements end() const {
    return {u.back(), w.back(), phi.back()};
  }
};

enum class ForceComponent { X, Z, M };

struct ShootingConfig {
  double tol = 1e-12;  ///< scaled max-norm bound on the end-displacement residual
  int max_iter = 40;
  int segments = 100;
};

struct ShootingResult {
  EndForces forces;
  IntegrationGrid grid;
  int iterations = 0;
  std::vector<double> residuals;  ///< scaled residual before each update and at exit
};

/// Integrates the three first-order equilibrium/kinematic ODEs across the
/// element with the explicit two-half-step scheme: moment at the segment
/// start, half-step rotation, midpoint normal force, full-step displacement
/// update carrying the axial strain factor (1 + N/EA), end-of-segment moment,
/// second half-step rotation.
IntegrationGrid integrate(const EndForces& f, const SectionProperties& sec,
                          double length, int segments);

/// One column of the shooting Jacobian: runs the linearized recursion of the
/// integrator for a unit increment of the chosen force component, reusing the
/// stored forward grid. Zero initial values, same stepping.
LocalEndDisplacements integrate_sensitivity(const EndForces& f,
                                            const SectionProperties& sec,
                                            const IntegrationGrid& grid,
                                            ForceComponent direction);

/// 3x3 Jacobian of the map forces -> end displacements. Columns ordered
/// (X, Z, M), rows ordered (u, w, phi).
Mat3 jacobian_from_grid(const EndForces& f, const SectionProperties& sec,
                        const IntegrationGrid& grid);

Mat3 jacobian(const EndForces& f, const SectionProperties& sec, double length,
              int segments);

/// Newton solve for the left-end forces that map to the prescribed end
/// displacements. Convergence is measured in the scaled max-norm
/// max(|du|/L, |dw|/L, |dphi|). Throws NonConvergenceError (also on
/// divergence past 1e6) and SingularMatrixError.
ShootingResult solve_end_forces(const LocalEndDisplacements& target,
                                const EndForces& start,
                                const ShootingConfig& cfg,
                                const SectionProperties& sec, double length);

/// Linear-theory starting guess: one Newton step from the unloaded state.
EndForces initial_guess(const LocalEndDisplacements& target,
                        const SectionProperties& sec, double length);

}  // namespace pframe
