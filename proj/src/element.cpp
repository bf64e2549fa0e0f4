#include "pframe/element.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pframe/errors.hpp"

namespace pframe {

namespace {

void check_inputs(const SectionProperties& sec, double length, int segments) {
  if (!(sec.EA > 0.0) || !(sec.EI > 0.0))
    throw DomainError("element: section stiffnesses must be positive");
  if (!(length > 0.0)) throw DomainError("element: length must be positive");
  if (segments < 1) throw DomainError("element: segment count must be >= 1");
}

double scaled_norm(const LocalEndDisplacements& r, double length) {
  return std::max({std::abs(r.u) / length, std::abs(r.w) / length, std::abs(r.phi)});
}

}  // namespace

IntegrationGrid integrate(const EndForces& f, const SectionProperties& sec,
                          double length, int segments) {
  check_inputs(sec, length, segments);

  IntegrationGrid g;
  g.segments = segments;
  g.dx = length / segments;
  g.x.resize(segments + 1);
  g.phi.assign(segments + 1, 0.0);
  g.u.assign(segments + 1, 0.0);
  g.w.assign(segments + 1, 0.0);
  g.moment.assign(segments + 1, 0.0);
  g.phi_mid.assign(segments, 0.0);
  g.normal_mid.assign(segments, 0.0);

  const double dx = g.dx;
  const double half_over_EI = dx / (2.0 * sec.EI);

  for (int i = 0; i <= segments; ++i) g.x[i] = i * dx;
  g.moment[0] = -f.M;

  for (int i = 1; i <= segments; ++i) {
    const double m_prev = g.moment[i - 1];
    const double phi_mid = g.phi[i - 1] + m_prev * half_over_EI;
    const double n_mid = -f.X * std::cos(phi_mid) + f.Z * std::sin(phi_mid);
    const double stretch = 1.0 + n_mid / sec.EA;
    g.u[i] = g.u[i - 1] + (stretch * std::cos(phi_mid) - 1.0) * dx;
    g.w[i] = g.w[i - 1] - stretch * std::sin(phi_mid) * dx;
    const double m_i = -f.M + f.X * g.w[i] - f.Z * (g.x[i] + g.u[i]);
    g.phi[i] = phi_mid + m_i * half_over_EI;
    g.moment[i] = m_i;
    g.phi_mid[i - 1] = phi_mid;
    g.normal_mid[i - 1] = n_mid;
  }
  return g;
}

LocalEndDisplacements integrate_sensitivity(const EndForces& f,
                                            const SectionProperties& sec,
                                            const IntegrationGrid& g,
                                            ForceComponent direction) {
  const int n = g.segments;
  if (n < 1 || static_cast<int>(g.phi.size()) != n + 1 ||
      static_cast<int>(g.phi_mid.size()) != n ||
      static_cast<int>(g.normal_mid.size()) != n)
    throw DomainError("integrate_sensitivity: grid dimensions inconsistent");

  const double dX = direction == ForceComponent::X ? 1.0 : 0.0;
  const double dZ = direction == ForceComponent::Z ? 1.0 : 0.0;
  const double dM = direction == ForceComponent::M ? 1.0 : 0.0;

  const double dx = g.dx;
  const double half_over_EI = dx / (2.0 * sec.EI);

  double du = 0.0, dw = 0.0, dphi = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double phi_mid = g.phi_mid[i - 1];
    const double n_mid = g.normal_mid[i - 1];
    const double c = std::cos(phi_mid);
    const double s = std::sin(phi_mid);
    const double stretch = 1.0 + n_mid / sec.EA;

    const double dphi_mid =
        dphi + half_over_EI * (-dM + dX * g.w[i - 1] + f.X * dw -
                               dZ * (g.x[i - 1] + g.u[i - 1]) - f.Z * du);
    const double dn_mid = -dX * c + f.X * s * dphi_mid + dZ * s + f.Z * c * dphi_mid;
    du += dn_mid / sec.EA * c * dx - stretch * s * dphi_mid * dx;
    dw += -dn_mid / sec.EA * s * dx - stretch * c * dphi_mid * dx;
    dphi = dphi_mid + half_over_EI * (-dM + dX * g.w[i] + f.X * dw -
                                      dZ * (g.x[i] + g.u[i]) - f.Z * du);
  }
  return {du, dw, dphi};
}

Mat3 jacobian_from_grid(const EndForces& f, const SectionProperties& sec,
                        const IntegrationGrid& grid) {
  Mat3 m{};
  const ForceComponent cols[3] = {ForceComponent::X, ForceComponent::Z,
                                  ForceComponent::M};
  for (int j = 0; j < 3; ++j) {
    const LocalEndDisplacements d = integrate_sensitivity(f, sec, grid, cols[j]);
    m[0][j] = d.u;
    m[1][j] = d.w;
    m[2][j] = d.phi;
  }
  return m;
}

Mat3 jacobian(const EndForces& f, const SectionProperties& sec, double length,
              int segments) {
  return jacobian_from_grid(f, sec, integrate(f, sec, length, segments));
}

ShootingResult solve_end_forces(const LocalEndDisplacements& target,
                                const EndForces& start, const ShootingConfig& cfg,
                                const SectionProperties& sec, double length) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
    throw DomainError("solve_end_forces: invalid config");
  if (!std::isfinite(start.X) || !std::isfinite(start.Z) || !std::isfinite(start.M))
    throw DomainError("solve_end_forces: non-finite starting forces");

  constexpr double kDivergenceCap = 1e6;

  ShootingResult out;
  out.forces = start;
  out.grid = integrate(out.forces, sec, length, cfg.segments);

  auto residual = [&](const IntegrationGrid& g) {
    const LocalEndDisplacements e = g.end();
    return LocalEndDisplacements{target.u - e.u, target.w - e.w, target.phi - e.phi};
  };

  LocalEndDisplacements r = residual(out.grid);
  double norm = scaled_norm(r, length);
  out.residuals.push_back(norm);

  while (norm > cfg.tol) {
    if (!std::isfinite(norm) || norm > kDivergenceCap)
      throw NonConvergenceError("shooting diverged", out.iterations, norm);
    if (out.iterations >= cfg.max_iter)
      throw NonConvergenceError("shooting did not converge", out.iterations, norm);

    const Mat3 G = jacobian_from_grid(out.forces, sec, out.grid);
    Vec3 step;
    try {
      step = solve3(G, {r.u, r.w, r.phi});
    } catch (const SingularMatrixError&) {
      // A singular Jacobian away from the start means Newton wandered into a
      // fold of the force-displacement map; report it as a failed solve.
      if (out.iterations == 0)
        throw SingularMatrixError("shooting Jacobian singular at the start");
      throw NonConvergenceError("shooting Jacobian became singular",
                                out.iterations, norm);
    }
    out.forces.X += step[0];
    out.forces.Z += step[1];
    out.forces.M += step[2];
    ++out.iterations;

    out.grid = integrate(out.forces, sec, length, cfg.segments);
    r = residual(out.grid);
    norm = scaled_norm(r, length);
    out.residuals.push_back(norm);
  }
  return out;
}

EndForces initial_guess(const LocalEndDisplacements& target,
                        const SectionProperties& sec, double length) {
  // Closed-form inverse of the zero-state Jacobian: the linear-theory
  // clamped-end stiffness in this sign convention.
  const double L = length;
  const double a = -sec.EA / L;
  const double b = -12.0 * sec.EI / (L * L * L);
  const double c = -6.0 * sec.EI / (L * L);
  const double d = 2.0 * sec.EI / L;
  EndForces f;
  f.X = a * target.u;
  f.Z = b * target.w + c * target.phi;
  f.M = -c * target.w + d * target.phi;
  return f;
}

}  // namespace pframe
