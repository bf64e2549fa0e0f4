#pragma once

#include "pframe/dense.hpp"
#include "pframe/element.hpp"

namespace pframe {

/// Undeformed element geometry. Direction cosines are stored instead of the
/// inclination angle, so any orientation in the plane is handled without
/// quadrant rules.
struct ElementGeometry {
  double length = 0.0;
  double cos0 = 1.0;  ///< cos of the undeformed inclination
  double sin0 = 0.0;  ///< sin of the undeformed inclination

  static ElementGeometry from_coords(double xa, double za, double xb, double zb);
};

/// Global displacement components and rotation of one joint.
struct GlobalNodeState {
  double u = 0.0;
  double w = 0.0;
  double phi = 0.0;
};

/// Element end forces in global components. The right-end forces are the
/// exact negatives of the left-end forces; the end moments are independent.
struct GlobalEndForces {
  double Xa = 0.0;
  double Za = 0.0;
  double Ma = 0.0;
  double Xb = 0.0;
  double Zb = 0.0;
  double Mb = 0.0;
};

/// Rigid-body (phase A) reduction: maps the global joint states to the
/// deformational end displacements seen in the co-rotational frame.
LocalEndDisplacements local_target(const GlobalNodeState& node_a,
                                   const GlobalNodeState& node_b,
                                   const ElementGeometry& geom);

/// Rotates the converged left-end forces to global components, negates them
/// for the right end, and recovers the right-end moment from moment
/// equilibrium about the deformed right end.
GlobalEndForces global_forces(const EndForces& f, const LocalEndDisplacements& local,
                              double phi_a, const ElementGeometry& geom);

/// Consistent 6x6 element tangent in global coordinates, DOF order
/// (u_a, w_a, phi_a, u_b, w_b, phi_b). Rows 4 and 5 are the negatives of
/// rows 1 and 2; the sixth row is completed by symmetry from the sixth
/// column with the diagonal entry recovered from moment equilibrium.
Mat6 tangent_stiffness(const EndForces& f, const Mat3& g_inverse,
                       const GlobalNodeState& node_a, const GlobalNodeState& node_b,
                       const ElementGeometry& geom, const GlobalEndForces& gf);

}  // namespace pframe
