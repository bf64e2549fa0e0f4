#include "pframe/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pframe/elliptic.hpp"
#include "pframe/errors.hpp"

namespace pframe {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp1(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

AnalyticConstants constants_from_state(double X, double Z, double M, double phi_a,
                                       double EI, int sgn_kappa_hint) {
  if (!(EI > 0.0)) throw DomainError("constants_from_state: EI must be positive");

  AnalyticConstants c;
  c.EI = EI;
  c.phi_a = phi_a;
  c.F_ab = std::hypot(X, Z);
  if (c.F_ab == 0.0)
    throw DegenerateStateError(
        "constants_from_state: zero end force is the constant-curvature case");
  c.kappa_a = -M / EI;
  c.N_ab = -X * std::cos(phi_a) + Z * std::sin(phi_a);

  c.c1 = c.kappa_a * c.kappa_a + 2.0 * c.N_ab / EI;
  c.c2 = 2.0 * X / EI;
  c.c3 = -2.0 * Z / EI;
  c.A = 2.0 * c.F_ab / EI;
  c.alpha = std::atan2(Z, X);
  // c1 + A is nonnegative up to roundoff (it is the squared phase rate).
  c.k = std::sqrt(2.0 * c.A / std::max(c.c1 + c.A, 0.0));
  c.k_tilde = 1.0 / c.k;

  const double half = 0.5 * (phi_a + c.alpha);
  if (c.kappa_a != 0.0) {
    c.sgn_kappa = c.kappa_a > 0.0 ? 1.0 : -1.0;
  } else if (std::sin(half) != 0.0) {
    // At a moment-free end the fall direction of the pendulum analogue is
    // fixed by the state itself.
    c.sgn_kappa = std::sin(half) > 0.0 ? -1.0 : 1.0;
  } else if (sgn_kappa_hint != 0) {
    c.sgn_kappa = sgn_kappa_hint > 0 ? 1.0 : -1.0;
  } else {
    c.sgn_kappa = -1.0;
  }
  c.b_tilde = std::sqrt(c.F_ab / EI) * c.sgn_kappa;
  c.b_plain = 0.5 * std::sqrt(std::max(c.c1 + c.A, 0.0)) * c.sgn_kappa;

  if (c.k <= kModulusCap) {
    c.reciprocal = false;
    c.a_plain = incomplete_F(half, c.k);
    c.a_tilde = c.k * c.a_plain;
  } else if (c.k_tilde <= kModulusCap) {
    // Straight uniformly compressed member: the reciprocal modulus vanishes
    // and the rotation field is the constant -alpha.
    c.reciprocal = true;
    if (c.k_tilde == 0.0)
      c.a_tilde = 0.0;
    else
      c.a_tilde = incomplete_F(std::asin(clamp1(std::sin(half) / c.k_tilde)), c.k_tilde);
    c.a_plain = c.a_tilde / c.k;
  } else {
    throw DegenerateStateError(
        "constants_from_state: modulus at the separatrix (k = 1), the straight "
        "tension state has no bent solution nearby");
  }
  return c;
}

namespace {

// Coordinate of the first inflexion point; only meaningful for k > 1.
double inflexion_coordinate(const AnalyticConstants& c) {
  return (c.sgn_kappa * complete_K(c.k_tilde) - c.a_tilde) / c.b_tilde;
}

void check_before_inflexion(double x, const AnalyticConstants& c, const char* who) {
  if (!c.reciprocal) return;
  const double x_in = inflexion_coordinate(c);
  const double slack = 1e-10 * (std::abs(x_in) + 1.0);
  if (x > x_in + slack)
    throw DomainError(std::string(who) +
                      ": coordinate past the inflexion point; use the "
                      "inflexion continuation");
}

}  // namespace

double rotation_field(double x, const AnalyticConstants& c) {
  check_before_inflexion(x, c, "rotation_field");
  if (c.reciprocal) {
    const JacobiValues j = jacobi_elliptic(c.a_tilde + c.b_tilde * x, c.k_tilde);
    return 2.0 * std::asin(clamp1(c.k_tilde * j.sn)) - c.alpha;
  }
  const JacobiValues j = jacobi_elliptic(c.a_plain + c.b_plain * x, c.k);
  return 2.0 * j.am - c.alpha;
}

std::pair<double, double> displacement_field(double x, const AnalyticConstants& c,
                                             double Cu, double Cw) {
  check_before_inflexion(x, c, "displacement_field");
  const double ca = std::cos(c.alpha);
  const double sa = std::sin(c.alpha);
  if (c.reciprocal) {
    const JacobiValues j = jacobi_elliptic(c.a_tilde + c.b_tilde * x, c.k_tilde);
    const double e = incomplete_E(j.am, c.k_tilde);
    const double swing = 2.0 * c.k_tilde / c.b_tilde * j.cn;
    const double drift = 2.0 / c.b_tilde * e - x;
    return {Cu - x - swing * sa + drift * ca, Cw + swing * ca + drift * sa};
  }
  const double k2 = c.k * c.k;
  const JacobiValues j = jacobi_elliptic(c.a_plain + c.b_plain * x, c.k);
  const double e = incomplete_E(j.am, c.k);
  const double swing = 2.0 / (c.b_plain * k2) * j.dn;
  const double drift = 2.0 / (c.b_plain * k2) * e + x - 2.0 * x / k2;
  return {Cu - x - swing * sa + drift * ca, Cw + swing * ca + drift * sa};
}

double uniform_curvature(double x, double phi_a, double kappa_a) {
  return phi_a + kappa_a * x;
}

InflexionPoint inflexion_point(const AnalyticConstants& c) {
  if (!c.reciprocal)
    throw NoInflexionError("inflexion_point: no inflexion for modulus k <= 1");

  // Vanishing end curvature means the left end itself is the inflexion.
  if (c.kappa_a == 0.0) return {0.0, c.phi_a};

  InflexionPoint p;
  p.x = inflexion_coordinate(c);

  const double cos_in =
      std::cos(c.phi_a + c.alpha) - c.EI / (2.0 * c.F_ab) * c.kappa_a * c.kappa_a;
  if (cos_in < -1.0 - 1e-12)
    throw NoInflexionError("inflexion_point: rotation equation has no root");
  const double base = std::acos(clamp1(cos_in));

  // Scan the candidate roots +-base - alpha + 2 pi n and keep the admissible
  // one closest to phi_a. A coincident root (kappa_a = 0 at the end) is the
  // x_in = 0 tie-break.
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_dist = std::numeric_limits<double>::infinity();
  for (int n = -2; n <= 2; ++n) {
    for (const double sign : {1.0, -1.0}) {
      const double cand = sign * base - c.alpha + 2.0 * kPi * n;
      const double diff = cand - c.phi_a;
      const double dist = std::abs(diff);
      const bool admissible = dist <= 1e-9 || diff * c.sgn_kappa > 0.0;
      if (admissible && dist < best_dist) {
        best_dist = dist;
        best = cand;
      }
    }
  }
  if (!std::isfinite(best))
    throw NoInflexionError("inflexion_point: no admissible rotation root");
  p.phi = best;
  return p;
}

double inflexion_rotation_field(double x, const AnalyticConstants& c) {
  if (!c.reciprocal)
    throw NoInflexionError("inflexion_rotation_field: no inflexion for k <= 1");
  const double x_in = c.kappa_a == 0.0 ? 0.0 : inflexion_coordinate(c);
  const double K = complete_K(c.k_tilde);
  const double x_next = x_in + 2.0 * K / std::abs(c.b_tilde);
  const double slack = 1e-10 * (std::abs(x_in) + 1.0);
  if (x < x_in - slack || x > x_next + slack)
    throw DomainError(
        "inflexion_rotation_field: coordinate outside the arc between the "
        "first and second inflexion");
  const JacobiValues j =
      jacobi_elliptic(2.0 * c.sgn_kappa * K - c.a_tilde - c.b_tilde * x, c.k_tilde);
  return 2.0 * std::asin(clamp1(c.k_tilde * j.sn)) - c.alpha;
}

namespace {

struct CantileverAux {
  double modulus;
  double angle;  // incomplete-integral amplitude
};

CantileverAux cantilever_aux(double phi, double alpha) {
  if (!(alpha >= 0.0) || alpha >= kPi)
    throw DomainError("cantilever: inclination must lie in [0, pi)");
  const double total = alpha + phi;
  if (!(total > 0.0) || total > kPi)
    throw DomainError("cantilever: alpha + phi must lie in (0, pi]");
  const double m = std::sin(0.5 * total);
  if (m > kModulusCap)
    throw DomainError("cantilever: alpha + phi at the straight-line limit pi");
  const double den = 1.0 - std::cos(total);
  if (den <= 0.0)
    throw DomainError("cantilever: cos(alpha + phi) = 1");
  const double ratio = (1.0 - std::cos(alpha)) / den;
  return {m, std::asin(clamp1(std::sqrt(std::clamp(ratio, 0.0, 1.0))))};
}

}  // namespace

double cantilever_B(double phi, double alpha) {
  const CantileverAux a = cantilever_aux(phi, alpha);
  return complete_K(a.modulus) - incomplete_F(a.angle, a.modulus);
}

double cantilever_D(double phi, double alpha) {
  const CantileverAux a = cantilever_aux(phi, alpha);
  return incomplete_E(a.angle, a.modulus);
}

CantileverSolution cantilever_solution(double phi_a, double alpha, double L,
                                       double EI) {
  if (!(L > 0.0) || !(EI > 0.0))
    throw DomainError("cantilever_solution: L and EI must be positive");

  CantileverSolution s;
  s.alpha = alpha;
  s.phi_a = phi_a;

  if (phi_a == 0.0 && alpha > 0.0) {
    // Unloaded limit of the parameterization.
    return s;
  }

  const double B = cantilever_B(phi_a, alpha);
  const double D = cantilever_D(phi_a, alpha);
  const double m = std::sin(0.5 * (alpha + phi_a));
  const double E = complete_E(m);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double chord = std::sqrt(
      std::max(0.0, 2.0 * ca - 2.0 * std::cos(alpha + phi_a)));

  s.F = EI / (L * L) * B * B;
  s.u_a = L * (1.0 + ca) - L * sa / B * chord - 2.0 * L * ca / B * (E - D);
  s.w_a = L * sa + L * ca / B * chord - 2.0 * L * sa / B * (E - D);
  s.u_F = L * (1.0 + ca) - 2.0 * L / B * (E - D);
  return s;
}

CriticalLoad critical_load(double EA, double EI, double L_b) {
  if (!(EA > 0.0) || !(EI > 0.0) || !(L_b > 0.0))
    throw DomainError("critical_load: EA, EI, L_b must be positive");

  CriticalLoad r;
  r.euler = EI * kPi * kPi / (L_b * L_b);
  const double x = 4.0 * r.euler / EA;
  if (x > 1.0)
    throw NoBucklingError(
        "critical_load: axial stiffness below 4*EI*pi^2/L_b^2, stability is "
        "never lost");
  r.exact = 2.0 * r.euler / (1.0 + std::sqrt(1.0 - x));
  r.approx = r.euler * (1.0 + r.euler / EA);
  return r;
}

}  // namespace pframe
