#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pframe/analytic.hpp"
#include "pframe/element.hpp"
#include "pframe/elliptic.hpp"
#include "pframe/errors.hpp"
#include "pframe/transform.hpp"
#include "oracles.hpp"

using namespace pframe;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constants_from_state: closed-form entries") {
  // Straight compressed member: the reciprocal modulus vanishes and the
  // rotation field degenerates to a constant.
  const AnalyticConstants axial = constants_from_state(1.0, 0.0, 0.0, 0.0, 1.0);
  CHECK(axial.alpha == 0.0);
  CHECK(axial.F_ab == 1.0);
  CHECK(axial.N_ab == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(axial.A == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(axial.k_tilde == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
  CHECK(rotation_field(0.3, axial) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  const AnalyticConstants lateral = constants_from_state(0.0, 1.0, 0.0, 0.0, 1.0);
  CHECK(lateral.alpha == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(lateral.F_ab == 1.0);

  const AnalyticConstants pyth = constants_from_state(3.0, 4.0, 0.5, 0.2, 1.0);
  CHECK(pyth.F_ab == doctest::Approx(5.0).epsilon(1e-15));

  // Degenerate cases: no end force at all (constant curvature, separate
  // entry point) and the straight tension state at the separatrix.
  CHECK_THROWS_AS(constants_from_state(0.0, 0.0, 1.0, 0.0, 1.0),
                  DegenerateStateError);
  CHECK_THROWS_AS(constants_from_state(-1.0, 0.0, 0.0, 0.0, 1.0),
                  DegenerateStateError);
}

TEST_CASE("rotation_field: boundary value and equilibrium residual") {
  const double EI = 1.0;
  const AnalyticConstants c2 = constants_from_state(0.4, 0.3, -0.8, 0.25, EI);
  CHECK(rotation_field(0.0, c2) == doctest::Approx(0.25).epsilon(1e-10));

  // The rotation field satisfies the pendulum-form equilibrium ODE; check
  // with second-order finite differences against the curvature relation.
  const double h = 1e-5;
  for (double x = 0.05; x <= 0.3; x += 0.05) {
    const double pm = rotation_field(x - h, c2);
    const double p0 = rotation_field(x, c2);
    const double pp = rotation_field(x + h, c2);
    const double phi_xx = (pp - 2.0 * p0 + pm) / (h * h);
    const double residual = EI * phi_xx + 0.4 * std::sin(p0) + 0.3 * std::cos(p0);
    CHECK(std::abs(residual) <= 1e-5 * c2.F_ab);
  }
}

TEST_CASE("property: rotation field obeys the equilibrium ODE at random states") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double EI = 1.0;
  int tested = 0;
  while (tested < 10) {
    const double X = 2.0 * dist(rng);
    const double Z = 2.0 * dist(rng);
    const double M = 1.5 * dist(rng);
    const double phi_a = 0.8 * dist(rng);
    AnalyticConstants c;
    try {
      c = constants_from_state(X, Z, M, phi_a, EI);
    } catch (const DegenerateStateError&) {
      continue;
    }
    if (c.k_tilde >= 0.95) continue;  // keep away from the separatrix

    const double x_max = c.reciprocal
                             ? std::min(0.3, 0.9 * std::max(0.0, (complete_K(c.k_tilde) *
                                                                  c.sgn_kappa -
                                                                  c.a_tilde) /
                                                                     c.b_tilde))
                             : 0.3;
    if (x_max < 0.05) continue;  // inflexion too close to sample the arc
    ++tested;
    const double h = 1e-5;
    for (double x = h; x + h <= x_max; x += x_max / 5.0) {
      const double pm = rotation_field(x - h, c);
      const double p0 = rotation_field(x, c);
      const double pp = rotation_field(x + h, c);
      const double phi_xx = (pp - 2.0 * p0 + pm) / (h * h);
      const double residual = EI * phi_xx + X * std::sin(p0) + Z * std::cos(p0);
      CHECK(std::abs(residual) <= 1e-5 * c.F_ab + 1e-6);
    }
  }
}

TEST_CASE("displacement_field: anchors and derivative relation") {
  const AnalyticConstants c = constants_from_state(0.5, 0.2, -0.6, 0.1, 1.0);

  // The integration constants shift the fields affinely: anchoring at x0
  // reproduces the imposed boundary displacement exactly.
  const auto [u_raw, w_raw] = displacement_field(0.2, c, 0.0, 0.0);
  const auto [u_anchored, w_anchored] =
      displacement_field(0.2, c, 0.37 - u_raw, -0.12 - w_raw);
  CHECK(u_anchored == doctest::Approx(0.37).epsilon(1e-13));
  CHECK(w_anchored == doctest::Approx(-0.12).epsilon(1e-13));

  // Inextensible kinematics: u' = cos(phi) - 1, w' = -sin(phi).
  const double h = 1e-6;
  for (double x = 0.05; x <= 0.25; x += 0.1) {
    const auto [up, wp] = displacement_field(x + h, c, 0.0, 0.0);
    const auto [um, wm] = displacement_field(x - h, c, 0.0, 0.0);
    const double phi = rotation_field(x, c);
    CHECK((up - um) / (2.0 * h) == doctest::Approx(std::cos(phi) - 1.0).epsilon(1e-6));
    CHECK((wp - wm) / (2.0 * h) ==
          doctest::Approx(-std::sin(phi)).scale(1.0).epsilon(1e-6));
  }
}

TEST_CASE("uniform_curvature: linear rotation field") {
  CHECK(uniform_curvature(0.0, 0.3, 2.0) == 0.3);
  CHECK(uniform_curvature(1.0, 0.3, 2.0 * kPi) == doctest::Approx(0.3 + 2.0 * kPi));
  CHECK(uniform_curvature(0.5, 0.0, kPi) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("inflexion_point: zero end curvature starts at the inflexion") {
  // kappa_a = 0 (no end moment) with the cantilever sign hint.
  const AnalyticConstants c = constants_from_state(0.9, 0.4, 0.0, 0.3, 1.0, -1);
  REQUIRE(c.reciprocal);
  const InflexionPoint p = inflexion_point(c);
  CHECK(std::abs(p.x) <= 1e-12);
  CHECK(p.phi == doctest::Approx(c.phi_a).epsilon(1e-12));
}

TEST_CASE("inflexion_point: slope vanishes there") {
  const AnalyticConstants c = constants_from_state(1.2, 0.5, -0.4, 0.2, 1.0);
  REQUIRE(c.reciprocal);
  const InflexionPoint p = inflexion_point(c);
  REQUIRE(p.x > 0.0);

  const double h = 1e-6;
  const double slope =
      (rotation_field(p.x, c) - rotation_field(p.x - h, c)) / h;  // one-sided
  CHECK(std::abs(slope) <= 1e-5);
  CHECK(rotation_field(p.x, c) == doctest::Approx(p.phi).epsilon(1e-9));

  // Sign rule for the rotation root.
  CHECK((p.phi - c.phi_a) * c.kappa_a >= 0.0);
}

TEST_CASE("inflexion continuation: C1 match and curvature reversal") {
  const AnalyticConstants c = constants_from_state(1.2, 0.5, -0.4, 0.2, 1.0);
  const InflexionPoint p = inflexion_point(c);

  CHECK(inflexion_rotation_field(p.x, c) ==
        doctest::Approx(rotation_field(p.x, c)).epsilon(1e-10));

  const double h = 1e-5;
  const double slope_right =
      (inflexion_rotation_field(p.x + h, c) - inflexion_rotation_field(p.x, c)) / h;
  CHECK(std::abs(slope_right) <= 1e-4);

  // Curvature beyond the inflexion has the opposite sign.
  const double x = p.x + 0.1;
  const double pm = inflexion_rotation_field(x - h, c);
  const double p0 = inflexion_rotation_field(x, c);
  const double pp = inflexion_rotation_field(x + h, c);
  const double phi_xx = (pp - 2.0 * p0 + pm) / (h * h);
  CHECK(phi_xx * c.sgn_kappa < 0.0);

  CHECK_THROWS_AS(inflexion_rotation_field(p.x - 0.05, c), DomainError);
}

TEST_CASE("full-beam rotation history matches the numeric integrator") {
  // Clamped-guided member: prescribed end sliding produces an interior
  // inflexion; the piecewise closed form must track the finite-difference
  // solution across it.
  const double L = 1.0;
  const SectionProperties sec{1e10, 1.0};
  const ShootingConfig cfg{1e-12, 60, 2000};
  const LocalEndDisplacements target{-0.05, 0.3, 0.0};
  // The member is nearly inextensible, so the end shortening is geometric;
  // start from the bending-only linear estimate.
  const ShootingResult shot = solve_end_forces(
      target, initial_guess({0.0, target.w, target.phi}, sec, L), cfg, sec, L);

  const AnalyticConstants c = constants_from_state(
      shot.forces.X, shot.forces.Z, shot.forces.M, 0.0, sec.EI);
  REQUIRE(c.reciprocal);
  const InflexionPoint p = inflexion_point(c);
  CHECK(p.x == doctest::Approx(L / 2.0).epsilon(1e-3));

  // The grid moment changes sign at the same station.
  const IntegrationGrid& g = shot.grid;
  int sign_change = -1;
  for (int i = 0; i + 1 <= g.segments; ++i)
    if (g.moment[i] * g.moment[i + 1] < 0.0) sign_change = i;
  REQUIRE(sign_change >= 0);
  CHECK(g.x[sign_change] == doctest::Approx(p.x).epsilon(2e-3));

  double max_err = 0.0;
  for (int i = 0; i <= g.segments; i += 40) {
    const double x = g.x[i];
    const double ana = x <= p.x ? rotation_field(x, c) : inflexion_rotation_field(x, c);
    max_err = std::max(max_err, std::abs(ana - g.phi[i]));
  }
  CHECK(max_err <= 1e-3);
}

TEST_CASE("cantilever_B and cantilever_D: special values") {
  // Axial case: the second term vanishes.
  CHECK(cantilever_B(1.0, 0.0) ==
        doctest::Approx(complete_K(std::sin(0.5))).epsilon(1e-14));
  CHECK(cantilever_D(1.0, 0.0) == 0.0);

  // Inclined case against the quadrature oracle.
  const double alpha = kPi / 2.0;
  const double phi = 0.5;
  const double m = std::sin(0.5 * (alpha + phi));
  const double psi = std::asin(
      std::sqrt((1.0 - std::cos(alpha)) / (1.0 - std::cos(alpha + phi))));
  CHECK(cantilever_B(phi, alpha) ==
        doctest::Approx(oracles::quad_F(kPi / 2.0, m) - oracles::quad_F(psi, m))
            .epsilon(1e-12));
  CHECK(cantilever_D(phi, alpha) ==
        doctest::Approx(oracles::quad_E(psi, m)).epsilon(1e-12));

  // Positivity.
  for (double a = 0.0; a < 2.6; a += 0.4)
    for (double f = 0.1; a + f < kPi - 0.05; f += 0.3) {
      CHECK(cantilever_B(f, a) > 0.0);
      CHECK(cantilever_D(f, a) >= 0.0);
    }

  CHECK_THROWS_AS(cantilever_B(0.0, 0.0), DomainError);  // cos(alpha+phi) = 1
}

TEST_CASE("cantilever_solution: Euler limit and axial closed forms") {
  const double L = 1.0, EI = 1.0;

  // Vanishing rotation recovers the buckling load of the clamped-free column.
  const CantileverSolution tiny = cantilever_solution(1e-6, 0.0, L, EI);
  CHECK(tiny.F == doctest::Approx(EI * kPi * kPi / (4.0 * L * L)).epsilon(1e-4));

  const double m = std::sin(0.5);
  const CantileverSolution one = cantilever_solution(1.0, 0.0, L, EI);
  CHECK(one.F == doctest::Approx(EI / (L * L) * complete_K(m) * complete_K(m))
                     .epsilon(1e-13));
  CHECK(one.u_a == doctest::Approx(2.0 * L * (1.0 - complete_E(m) / complete_K(m)))
                       .epsilon(1e-13));
  CHECK(one.w_a == doctest::Approx(2.0 * L * m / complete_K(m)).epsilon(1e-13));

  // Projection identity.
  for (const double alpha : {0.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0}) {
    for (const double phi : {0.1, 0.5, 1.0}) {
      const CantileverSolution s = cantilever_solution(phi, alpha, L, EI);
      CHECK(s.u_F == doctest::Approx(s.u_a * std::cos(alpha) +
                                     s.w_a * std::sin(alpha))
                         .epsilon(1e-11));
    }
  }
}

TEST_CASE("property: cantilever solution agrees with the numeric element") {
  // Pose the closed-form cantilever as a shooting problem: the member is
  // clamped at node b and loaded at node a; the node-a state comes from the
  // closed form and the recovered force must match.
  const double L = 1.0, EI = 1.0;
  const SectionProperties sec{1e10, EI};
  const ElementGeometry geom = ElementGeometry::from_coords(0, 0, L, 0);
  const ShootingConfig cfg{1e-12, 80, 4000};

  for (const double alpha : {0.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0}) {
    for (const double phi_a : {0.1, 0.5, 1.0}) {
      const CantileverSolution s = cantilever_solution(phi_a, alpha, L, EI);
      // The member is clamped at node b; node a carries the closed-form
      // displacements and rotation.
      const GlobalNodeState node_a{s.u_a, s.w_a, s.phi_a};
      const GlobalNodeState node_b{0.0, 0.0, 0.0};
      const LocalEndDisplacements target = local_target(node_a, node_b, geom);
      // Start the discrete solve from the closed-form force rotated into the
      // co-rotational frame (a moment-free tip).
      const EndForces start{s.F * std::cos(alpha + phi_a),
                            s.F * std::sin(alpha + phi_a), 0.0};
      const ShootingResult shot = solve_end_forces(target, start, cfg, sec, L);

      const double F_num = std::hypot(shot.forces.X, shot.forces.Z);
      CHECK(F_num == doctest::Approx(s.F).epsilon(5e-4));

      // Global force components follow the prescribed inclination.
      const GlobalEndForces gf = global_forces(shot.forces, target, node_a.phi, geom);
      CHECK(gf.Xa == doctest::Approx(s.F * std::cos(alpha)).epsilon(5e-4).scale(s.F));
      CHECK(gf.Za == doctest::Approx(s.F * std::sin(alpha)).epsilon(5e-4).scale(s.F));
    }
  }
}

TEST_CASE("cantilever_solution: unloaded parameterization endpoint") {
  const CantileverSolution s = cantilever_solution(0.0, 2.0 * kPi / 3.0, 1.0, 1.0);
  CHECK(s.F == 0.0);
  CHECK(s.u_a == 0.0);
  CHECK(s.w_a == 0.0);
  CHECK(s.u_F == 0.0);
}

TEST_CASE("critical_load: published reference values") {
  const CriticalLoad c100 = critical_load(100.0, 1.0, 2.0);
  CHECK(c100.exact == doctest::Approx(2.531485).epsilon(5e-7));
  CHECK(c100.approx == doctest::Approx(2.5283).epsilon(5e-5));
  CHECK(c100.euler == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-15));

  const CriticalLoad c10k = critical_load(10000.0, 1.0, 2.0);
  CHECK(c10k.exact == doctest::Approx(2.46801).epsilon(5e-6));

  // Exact and approximate forms agree closely for stiff members.
  for (const double EA : {100.0, 1000.0, 10000.0}) {
    const CriticalLoad c = critical_load(EA, 1.0, 2.0);
    if (EA >= 100.0 * c.euler) continue;  // below the agreement regime
    CHECK(std::abs(c.approx - c.exact) / c.exact <= 0.002);
  }

  CHECK_THROWS_AS(critical_load(5.0, 1.0, 2.0), NoBucklingError);
}
