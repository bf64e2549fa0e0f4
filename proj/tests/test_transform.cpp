#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pframe/element.hpp"
#include "pframe/errors.hpp"
#include "pframe/transform.hpp"
#include "oracles.hpp"

using namespace pframe;

namespace {

constexpr double kPi = std::numbers::pi;

struct ConvergedState {
  ElementGeometry geom;
  GlobalNodeState a, b;
  SectionProperties sec;
  EndForces forces;
  Mat3 g_inv;
  GlobalEndForces gf;
  Mat6 k;
  LocalEndDisplacements local;
  int segments;
};

// Solves the element at the given node states and assembles everything the
// tangent needs. The node states are ramped in substeps with warm-started
// forces, the same way the incremental solver reaches large deformations.
ConvergedState converge(const ElementGeometry& geom, const GlobalNodeState& a,
                        const GlobalNodeState& b, const SectionProperties& sec,
                        int segments) {
  ConvergedState s{geom, a, b, sec, {}, {}, {}, {}, {}, segments};
  EndForces warm{};
  ShootingResult r;
  for (const double ramp : {0.25, 0.5, 0.75, 1.0}) {
    const GlobalNodeState ra{ramp * a.u, ramp * a.w, ramp * a.phi};
    const GlobalNodeState rb{ramp * b.u, ramp * b.w, ramp * b.phi};
    const LocalEndDisplacements target = local_target(ra, rb, geom);
    r = solve_end_forces(target, warm, {1e-13, 60, segments}, sec, geom.length);
    warm = r.forces;
  }
  s.local = local_target(a, b, geom);
  s.forces = r.forces;
  s.g_inv = inverse3(jacobian_from_grid(r.forces, sec, r.grid));
  s.gf = global_forces(r.forces, s.local, a.phi, geom);
  s.k = tangent_stiffness(r.forces, s.g_inv, a, b, geom, s.gf);
  return s;
}

double mat6_max(const Mat6& k) {
  double m = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m = std::max(m, std::abs(k[i][j]));
  return m;
}

// Finite-difference tangent: perturb each global DOF, re-solve the shooting
// problem, differentiate the six global force components.
Mat6 fd_tangent(const ConvergedState& s, double h) {
  Mat6 fd{};
  for (int j = 0; j < 6; ++j) {
    auto eval = [&](double sign) {
      GlobalNodeState a = s.a, b = s.b;
      double* comps[6] = {&a.u, &a.w, &a.phi, &b.u, &b.w, &b.phi};
      *comps[j] += sign * h;
      const LocalEndDisplacements local = local_target(a, b, s.geom);
      const ShootingResult r = solve_end_forces(local, s.forces,
                                                {5e-14, 60, s.segments}, s.sec,
                                                s.geom.length);
      return global_forces(r.forces, local, a.phi, s.geom);
    };
    const GlobalEndForces p = eval(1.0);
    const GlobalEndForces m = eval(-1.0);
    const double dp[6] = {p.Xa, p.Za, p.Ma, p.Xb, p.Zb, p.Mb};
    const double dm[6] = {m.Xa, m.Za, m.Ma, m.Xb, m.Zb, m.Mb};
    for (int i = 0; i < 6; ++i) fd[i][j] = (dp[i] - dm[i]) / (2.0 * h);
  }
  return fd;
}

}  // namespace

TEST_CASE("geometry: direction cosines from coordinates") {
  const ElementGeometry g = ElementGeometry::from_coords(1.0, 2.0, 4.0, 6.0);
  CHECK(g.length == doctest::Approx(5.0));
  CHECK(g.cos0 == doctest::Approx(0.6));
  CHECK(g.sin0 == doctest::Approx(0.8));
  CHECK_THROWS_AS(ElementGeometry::from_coords(1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("local_target: trivial and translation cases") {
  const ElementGeometry g = ElementGeometry::from_coords(0, 0, 1, 0);

  const LocalEndDisplacements zero = local_target({}, {}, g);
  CHECK(zero.u == 0.0);
  CHECK(zero.w == 0.0);
  CHECK(zero.phi == 0.0);

  const LocalEndDisplacements stretch = local_target({}, {0.1, 0.0, 0.0}, g);
  CHECK(stretch.u == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(stretch.w == 0.0);
  CHECK(stretch.phi == 0.0);
}

TEST_CASE("property: rigid-body motion maps to zero local target") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double xa = dist(rng), za = dist(rng);
    const double xb = xa + 0.5 + 0.5 * std::abs(dist(rng));
    const double zb = za + dist(rng);
    const ElementGeometry g = ElementGeometry::from_coords(xa, za, xb, zb);

    const double tu = dist(rng), tw = dist(rng), theta = 2.0 * dist(rng);
    // Rotate node b about node a by theta (counterclockwise) and translate.
    const double dx = xb - xa, dz = zb - za;
    const double c = std::cos(theta), s = std::sin(theta);
    GlobalNodeState a{tu, tw, theta};
    GlobalNodeState b{tu + (c * dx + s * dz) - dx, tw + (-s * dx + c * dz) - dz, theta};

    const LocalEndDisplacements d = local_target(a, b, g);
    CHECK(std::abs(d.u) <= 1e-12 * g.length);
    CHECK(std::abs(d.w) <= 1e-12 * g.length);
    CHECK(d.phi == 0.0);
  }
}

TEST_CASE("global_forces: trivial cases and rotation") {
  const ElementGeometry g = ElementGeometry::from_coords(0, 0, 2, 0);

  const GlobalEndForces zero = global_forces({}, {}, 0.0, g);
  CHECK(zero.Xa == 0.0);
  CHECK(zero.Za == 0.0);
  CHECK(zero.Ma == 0.0);
  CHECK(zero.Xb == 0.0);
  CHECK(zero.Zb == 0.0);
  CHECK(zero.Mb == 0.0);

  // Pure end moment: opposite moment at the far end, no forces.
  const GlobalEndForces pure = global_forces({0, 0, 0.7}, {0, 0, 0}, 0.0, g);
  CHECK(pure.Mb == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(pure.Xa == 0.0);
  CHECK(pure.Za == 0.0);

  // Vertical element: a unit local axial force points along global z.
  const ElementGeometry vert = ElementGeometry::from_coords(0, 0, 0, 3);
  const GlobalEndForces rot = global_forces({1, 0, 0}, {0, 0, 0}, 0.0, vert);
  CHECK(rot.Xa == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(rot.Za == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: global end forces are in equilibrium") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const SectionProperties sec{1e4, 1.0};

  for (int trial = 0; trial < 20; ++trial) {
    const ElementGeometry g =
        ElementGeometry::from_coords(dist(rng), dist(rng), 2.0 + dist(rng), dist(rng));
    GlobalNodeState a{0.1 * dist(rng), 0.1 * dist(rng), 0.6 * dist(rng)};
    GlobalNodeState b{0.1 * dist(rng), 0.1 * dist(rng), 0.6 * dist(rng)};
    const ConvergedState s = converge(g, a, b, sec, 400);

    // Force balance is exact by construction.
    CHECK(s.gf.Xb == -s.gf.Xa);
    CHECK(s.gf.Zb == -s.gf.Za);

    // Moment balance about the deformed a end: the b-end force acts through
    // the deformed chord.
    const double dxg = g.length * g.cos0 + (b.u - a.u);
    const double dzg = g.length * g.sin0 + (b.w - a.w);
    const double m_sum = s.gf.Ma + s.gf.Mb + dzg * s.gf.Xb - dxg * s.gf.Zb;
    const double scale = std::abs(s.gf.Ma) + std::abs(s.gf.Mb) +
                         g.length * (std::abs(s.gf.Xa) + std::abs(s.gf.Za)) + 1e-30;
    CHECK(std::abs(m_sum) <= 1e-10 * scale);
  }
}

TEST_CASE("tangent: undeformed element reproduces the linear stiffness") {
  const SectionProperties sec{2000.0, 3.0};
  for (const double angle : {0.0, 0.3, kPi / 2, 2.2}) {
    const double L = 1.4;
    const ElementGeometry g = ElementGeometry::from_coords(
        0.0, 0.0, L * std::cos(angle), L * std::sin(angle));
    const ConvergedState s = converge(g, {}, {}, sec, 2000);
    const Mat6 ref =
        oracles::linear_frame_stiffness(sec.EA, sec.EI, L, g.cos0, g.sin0);
    const double scale = mat6_max(ref);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(std::abs(s.k[i][j] - ref[i][j]) <= 2e-6 * scale);
  }
}

TEST_CASE("property: tangent matches finite differences at deformed states") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const SectionProperties sec{1e4, 1.0};

  for (int trial = 0; trial < 20; ++trial) {
    const ElementGeometry g =
        ElementGeometry::from_coords(0.0, 0.0, 1.0 + 0.3 * dist(rng), 0.5 * dist(rng));
    GlobalNodeState a{0.05 * dist(rng), 0.05 * dist(rng), 0.4 * dist(rng)};
    GlobalNodeState b{0.05 * dist(rng), 0.05 * dist(rng), 0.4 * dist(rng)};
    const ConvergedState s = converge(g, a, b, sec, 300);

    const Mat6 fd = fd_tangent(s, 1e-7 * g.length);
    const double scale = mat6_max(s.k);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(std::abs(s.k[i][j] - fd[i][j]) <= 1e-4 * scale);
  }
}

TEST_CASE("property: tangent is symmetric at converged states") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const SectionProperties sec{1e4, 1.0};

  for (int trial = 0; trial < 10; ++trial) {
    const ElementGeometry g =
        ElementGeometry::from_coords(0.0, 0.0, 1.0, 0.4 * dist(rng));
    GlobalNodeState a{0.05 * dist(rng), 0.05 * dist(rng), 0.3 * dist(rng)};
    GlobalNodeState b{0.05 * dist(rng), 0.05 * dist(rng), 0.3 * dist(rng)};
    const ConvergedState s = converge(g, a, b, sec, 1000);

    double asym = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        asym = std::max(asym, std::abs(s.k[i][j] - s.k[j][i]));
    CHECK(asym <= 1e-9 * mat6_max(s.k));
  }
}

TEST_CASE("property: rigid-body modes of the element tangent") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const SectionProperties sec{1e4, 1.0};

  for (int trial = 0; trial < 20; ++trial) {
    const double xb = 1.0 + 0.3 * dist(rng), zb = 0.5 * dist(rng);
    const ElementGeometry g = ElementGeometry::from_coords(0.0, 0.0, xb, zb);
    GlobalNodeState a{0.05 * dist(rng), 0.05 * dist(rng), 0.4 * dist(rng)};
    GlobalNodeState b{0.05 * dist(rng), 0.05 * dist(rng), 0.4 * dist(rng)};
    const ConvergedState s = converge(g, a, b, sec, 400);
    const double scale = mat6_max(s.k);

    // Translations are annihilated exactly.
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(s.k[i][0] + s.k[i][3]) <= 1e-12 * scale);
      CHECK(std::abs(s.k[i][1] + s.k[i][4]) <= 1e-12 * scale);
    }

    // Infinitesimal rotation about node a: the local state is frozen, so the
    // response is exactly the spin of the global force components.
    const double dxg = xb + (b.u - a.u);
    const double dzg = zb + (b.w - a.w);
    const double r[6] = {0.0, 0.0, 1.0, dzg, -dxg, 1.0};

    const double cp = std::cos(a.phi), sp = std::sin(a.phi);
    const double c = g.cos0 * cp + g.sin0 * sp;
    const double sn = g.sin0 * cp - g.cos0 * sp;
    const double spin_x = s.forces.X * sn + s.forces.Z * c;
    const double spin_z = -s.forces.X * c + s.forces.Z * sn;
    const double expected[6] = {spin_x, spin_z, 0.0, -spin_x, -spin_z, 0.0};

    for (int i = 0; i < 6; ++i) {
      double kv = 0.0;
      for (int j = 0; j < 6; ++j) kv += s.k[i][j] * r[j];
      CHECK(std::abs(kv - expected[i]) <= 1e-8 * scale);
    }
  }
}
