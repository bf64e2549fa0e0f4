#pragma once

namespace pframe {

/// Largest modulus accepted by the complete integrals and the Jacobi
/// functions; k -> 1 is the separatrix of the elastica and is excluded.
inline constexpr double kModulusCap = 1.0 - 1e-12;

/// Complete elliptic integral of the first kind, K(k), by the
/// arithmetic-geometric mean. Requires 0 <= k <= kModulusCap.
double complete_K(double k);

/// Complete elliptic integral of the second kind, E(k), for 0 <= k <= 1.
double complete_E(double k);

/// Incomplete elliptic integral of the first kind.
///
/// For k <= kModulusCap any real amplitude phi is accepted (quasi-periodic
/// extension). For k > 1 the integral is evaluated through the
/// reciprocal-modulus identity and requires |phi| <= asin(1/k).
double incomplete_F(double phi, double k);

/// Incomplete elliptic integral of the second kind; domain as incomplete_F.
double incomplete_E(double phi, double k);

struct JacobiValues {
  double am;
  double sn;
  double cn;
  double dn;
};

/// Jacobi amplitude and elliptic functions at any real argument,
/// 0 <= k <= kModulusCap. The amplitude follows the quasi-periodic
/// extension am(x + 2K) = am(x) + pi.
JacobiValues jacobi_elliptic(double x, double k);

}  // namespace pframe
