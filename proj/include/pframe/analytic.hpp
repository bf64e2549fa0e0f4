#pragma once

#include <utility>

#include "pframe/element.hpp"

namespace pframe {

/// Parameter set of the closed-form inextensible-elastica solution for one
/// monotone-curvature arc, derived from the left-end forces, moment and
/// rotation. The reciprocal modulus and its companions are populated when
/// the primary modulus exceeds 1, which is the regime with inflexion points.
struct AnalyticConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double A = 0.0;          ///< 2 F_ab / EI
  double alpha = 0.0;      ///< force inclination (clockwise from the local x axis)
  double k = 0.0;          ///< primary modulus
  double k_tilde = 0.0;    ///< reciprocal modulus 1/k
  double a_tilde = 0.0;    ///< phase offset in the reciprocal form
  double b_tilde = 0.0;    ///< phase rate sqrt(F_ab/EI) * sgn(kappa_a)
  double a_plain = 0.0;    ///< phase offset in the primary form (k < 1)
  double b_plain = 0.0;    ///< phase rate in the primary form
  double F_ab = 0.0;       ///< end-force magnitude
  double N_ab = 0.0;       ///< left-end normal force
  double kappa_a = 0.0;    ///< left-end curvature -M_ab/EI
  double phi_a = 0.0;
  double EI = 0.0;
  double sgn_kappa = -1.0; ///< curvature sign used where kappa_a vanishes
  bool reciprocal = false; ///< true when k > 1 (use the k-tilde forms)
};

/// Builds the constants from a left-end state. `sgn_kappa_hint` decides the
/// curvature sign when the end moment vanishes (0 picks the default -1).
/// Throws DegenerateStateError for uniform tension/compression (no bending)
/// and for the constant-curvature case X = Z = 0.
AnalyticConstants constants_from_state(double X, double Z, double M, double phi_a,
                                       double EI, int sgn_kappa_hint = 0);

/// Rotation of the cross-section at coordinate x, valid on the arc before
/// the first inflexion point. Throws DomainError past the inflexion.
double rotation_field(double x, const AnalyticConstants& c);

/// Inextensible displacement fields with caller-supplied integration
/// constants; same validity range as rotation_field.
std::pair<double, double> displacement_field(double x, const AnalyticConstants& c,
                                             double Cu, double Cw);

/// Rotation field of a beam loaded by end moments only.
double uniform_curvature(double x, double phi_a, double kappa_a);

struct InflexionPoint {
  double x = 0.0;
  double phi = 0.0;
};

/// Location and rotation of the inflexion point (curvature sign change).
/// Exists only in the reciprocal regime k > 1; the rotation root is chosen
/// with sgn(phi_in - phi_a) = sgn(kappa_a) and minimal |phi_in - phi_a|.
InflexionPoint inflexion_point(const AnalyticConstants& c);

/// Continuation of the rotation field past the inflexion point, valid up to
/// the next curvature sign change.
double inflexion_rotation_field(double x, const AnalyticConstants& c);

/// Auxiliary functions of the cantilever loaded by an inclined end force.
double cantilever_B(double phi, double alpha);
double cantilever_D(double phi, double alpha);

/// Closed-form cantilever response parameterized by the free-end rotation.
struct CantileverSolution {
  double alpha = 0.0;
  double phi_a = 0.0;
  double F = 0.0;    ///< force magnitude
  double u_a = 0.0;  ///< free-end axial displacement
  double w_a = 0.0;  ///< free-end transverse displacement
  double u_F = 0.0;  ///< free-end displacement projected on the force direction
};

/// Cantilever fixed at the far end, force of inclination alpha at the free
/// end, free-end rotation phi_a as the control parameter.
CantileverSolution cantilever_solution(double phi_a, double alpha, double L,
                                       double EI);

struct CriticalLoad {
  double exact = 0.0;
  double approx = 0.0;
  double euler = 0.0;
};

/// Critical compressive load of an axially compressible member with buckling
/// length L_b. Throws NoBucklingError when the axial stiffness is below the
/// threshold 4 * EI * pi^2 / L_b^2 under which stability is never lost.
CriticalLoad critical_load(double EA, double EI, double L_b);

}  // namespace pframe
