#include "pframe/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pframe/errors.hpp"

namespace pframe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_modulus(double k, const char* who) {
  if (!(k >= 0.0) || k > kModulusCap)
    throw DomainError(std::string(who) + ": modulus " + std::to_string(k) +
                      " outside [0, 1 - 1e-12]");
}

double complement(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

// AGM phase accumulation for F(phi, k) on the reduced strip phi in [0, pi/2].
// Classical descending-Landen scheme: the amplitude is doubled at every step
// while the modulus shrinks quadratically; the branch count `wraps` keeps the
// accumulated angle continuous.
double incomplete_F_strip(double phi, double k) {
  if (k == 0.0) return phi;
  if (phi == 0.0) return 0.0;
  if (phi >= kPi / 2.0 * (1.0 - 1e-15)) return complete_K(k);

  double a = 1.0;
  double b = complement(k);
  double c = k;
  double t = std::tan(phi);
  double angle = phi;
  double wraps = 0.0;
  double doubling = 1.0;

  while (std::abs(c / a) > kEps) {
    const double ratio = b / a;
    angle += std::atan(t * ratio) + wraps * kPi;
    wraps = std::floor((angle + kPi / 2.0) / kPi);
    t = t * (1.0 + ratio) / (1.0 - ratio * t * t);
    c = 0.5 * (a - b);
    const double ab = std::sqrt(a * b);
    a = 0.5 * (a + b);
    b = ab;
    doubling *= 2.0;
  }
  return (std::atan(t) + wraps * kPi) / (doubling * a);
}

// Same accumulation for E(phi, k); collects the Landen correction sum
// alongside the phase.
double incomplete_E_strip(double phi, double k) {
  if (k == 0.0) return phi;
  if (phi == 0.0) return 0.0;
  if (phi >= kPi / 2.0 * (1.0 - 1e-15)) return complete_E(k);

  double a = 1.0;
  double b = complement(k);
  double c = k;
  double t = std::tan(phi);
  double angle = phi;
  double wraps = 0.0;
  double doubling = 1.0;
  double correction = 0.0;

  while (std::abs(c / a) > kEps) {
    const double ratio = b / a;
    angle += std::atan(t * ratio) + wraps * kPi;
    wraps = std::floor((angle + kPi / 2.0) / kPi);
    t = t * (1.0 + ratio) / (1.0 - ratio * t * t);
    c = 0.5 * (a - b);
    const double ab = std::sqrt(a * b);
    a = 0.5 * (a + b);
    b = ab;
    doubling *= 2.0;
    correction += c * std::sin(angle);
  }
  const double f = (std::atan(t) + wraps * kPi) / (doubling * a);
  return complete_E(k) / complete_K(k) * f + correction;
}

// Reduces phi to the principal strip [-pi/2, pi/2] and applies
// F(phi + n*pi, k) = 2nK + F(phi, k) (and the analogue with E).
template <typename Strip>
double reduce_periodic(double phi, double k, double full_period_value, Strip strip) {
  const double n = std::round(phi / kPi);
  const double r = phi - n * kPi;
  const double sign = r < 0.0 ? -1.0 : 1.0;
  return 2.0 * n * full_period_value + sign * strip(std::abs(r), k);
}

// phi~ of the reciprocal-modulus identity: sin(phi~) = k sin(phi), k > 1.
double reciprocal_amplitude(double phi, double k, const char* who) {
  const double s = k * std::sin(phi);
  if (std::abs(s) > 1.0 + 1e-12)
    throw DomainError(std::string(who) + ": amplitude " + std::to_string(phi) +
                      " outside |phi| <= asin(1/k) for modulus " + std::to_string(k));
  return std::asin(std::clamp(s, -1.0, 1.0));
}

}  // namespace

double complete_K(double k) {
  check_modulus(k, "complete_K");
  double a = 1.0;
  double b = complement(k);
  while (std::abs(a - b) > kEps * a) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPi / (2.0 * a);
}

double complete_E(double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw DomainError("complete_E: modulus " + std::to_string(k) + " outside [0, 1]");
  if (k == 1.0) return 1.0;

  double a = 1.0;
  double b = complement(k);
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  while (std::abs(c) > kEps * a) {
    c = 0.5 * (a - b);
    const double ab = std::sqrt(a * b);
    a = 0.5 * (a + b);
    b = ab;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double incomplete_F(double phi, double k) {
  if (!(k >= 0.0)) throw DomainError("incomplete_F: negative modulus");
  if (k > 1.0) {
    const double kt = 1.0 / k;
    if (kt > kModulusCap)
      throw DomainError("incomplete_F: modulus too close to 1");
    return kt * incomplete_F(reciprocal_amplitude(phi, k, "incomplete_F"), kt);
  }
  check_modulus(k, "incomplete_F");
  return reduce_periodic(phi, k, complete_K(k), incomplete_F_strip);
}

double incomplete_E(double phi, double k) {
  if (!(k >= 0.0)) throw DomainError("incomplete_E: negative modulus");
  if (k > 1.0) {
    const double kt = 1.0 / k;
    if (kt > kModulusCap)
      throw DomainError("incomplete_E: modulus too close to 1");
    const double pt = reciprocal_amplitude(phi, k, "incomplete_E");
    return incomplete_E(pt, kt) / kt + (kt - 1.0 / kt) * incomplete_F(pt, kt);
  }
  check_modulus(k, "incomplete_E");
  return reduce_periodic(phi, k, complete_E(k), incomplete_E_strip);
}

JacobiValues jacobi_elliptic(double x, double k) {
  check_modulus(k, "jacobi_elliptic");
  if (k == 0.0) return {x, std::sin(x), std::cos(x), 1.0};

  // Forward AGM sequence, then backward amplitude halving.
  constexpr int kMaxLevels = 64;
  double as[kMaxLevels], cs[kMaxLevels];
  double a = 1.0;
  double b = complement(k);
  int n = 0;
  as[0] = a;
  cs[0] = k;
  while (std::abs(as[n] - b) > kEps * as[n] && n + 1 < kMaxLevels) {
    ++n;
    cs[n] = 0.5 * (a - b);
    const double ab = std::sqrt(a * b);
    a = 0.5 * (a + b);
    b = ab;
    as[n] = a;
  }

  double phi = std::ldexp(1.0, n) * as[n] * x;
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(cs[i] / as[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }

  JacobiValues v{};
  v.am = phi;
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  v.dn = std::sqrt(1.0 - k * k * v.sn * v.sn);
  return v;
}

}  // namespace pframe
