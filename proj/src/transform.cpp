#include "pframe/transform.hpp"

#include <cmath>

#include "pframe/errors.hpp"

namespace pframe {

namespace {

// cos/sin of the co-rotated frame inclination: the undeformed inclination
// reduced by the left-end rotation.
struct FrameCosSin {
  double c;
  double s;
};

FrameCosSin corotated(const ElementGeometry& g, double phi_a) {
  const double cp = std::cos(phi_a);
  const double sp = std::sin(phi_a);
  return {g.cos0 * cp + g.sin0 * sp, g.sin0 * cp - g.cos0 * sp};
}

}  // namespace

ElementGeometry ElementGeometry::from_coords(double xa, double za, double xb,
                                             double zb) {
  const double dx = xb - xa;
  const double dz = zb - za;
  const double length = std::hypot(dx, dz);
  if (!(length > 0.0))
    throw DomainError("element geometry: coincident end nodes");
  return {length, dx / length, dz / length};
}

LocalEndDisplacements local_target(const GlobalNodeState& node_a,
                                   const GlobalNodeState& node_b,
                                   const ElementGeometry& geom) {
  const FrameCosSin t = corotated(geom, node_a.phi);
  const double du = node_b.u - node_a.u;
  const double dw = node_b.w - node_a.w;
  LocalEndDisplacements d;
  d.u = du * t.c + dw * t.s + geom.length * (std::cos(node_a.phi) - 1.0);
  d.w = -du * t.s + dw * t.c + geom.length * std::sin(node_a.phi);
  d.phi = node_b.phi - node_a.phi;
  return d;
}

GlobalEndForces global_forces(const EndForces& f, const LocalEndDisplacements& local,
                              double phi_a, const ElementGeometry& geom) {
  const FrameCosSin t = corotated(geom, phi_a);
  GlobalEndForces g;
  g.Xa = f.X * t.c - f.Z * t.s;
  g.Za = f.X * t.s + f.Z * t.c;
  g.Ma = f.M;
  g.Xb = -g.Xa;
  g.Zb = -g.Za;
  g.Mb = -f.M + f.X * local.w - f.Z * (geom.length + local.u);
  return g;
}

Mat6 tangent_stiffness(const EndForces& f, const Mat3& g_inverse,
                       const GlobalNodeState& node_a, const GlobalNodeState& node_b,
                       const ElementGeometry& geom, const GlobalEndForces& gf) {
  (void)gf;  // right-end rows come from equilibrium, not from the force values

  const FrameCosSin t = corotated(geom, node_a.phi);
  const double L = geom.length;

  const Mat3 T = {{{t.c, t.s, 0.0}, {-t.s, t.c, 0.0}, {0.0, 0.0, 1.0}}};
  const Mat3 Tp = {{{t.s, -t.c, 0.0}, {t.c, t.s, 0.0}, {0.0, 0.0, 0.0}}};
  const Vec3 lp = {-L * std::sin(node_a.phi), L * std::cos(node_a.phi), 0.0};
  const Vec3 delta = {node_b.u - node_a.u, node_b.w - node_a.w,
                      node_b.phi - node_a.phi};

  const Mat3 TtGi = multiply(transpose(T), g_inverse);
  const Mat3 block = multiply(TtGi, T);

  // Sensitivity of the local target to the left-end rotation.
  Vec3 brace = multiply(Tp, delta);
  for (int i = 0; i < 3; ++i) brace[i] += lp[i];
  Vec3 phi_a_col = multiply(TtGi, brace);
  const Vec3 f_local = {f.X, f.Z, f.M};
  const Vec3 spin = multiply(transpose(Tp), f_local);
  for (int i = 0; i < 3; ++i) phi_a_col[i] += spin[i];

  Mat6 k{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      k[i][3 + j] = block[i][j];
      k[i][j] = -block[i][j];
    }
    k[i][2] = -block[i][2] + phi_a_col[i];
  }
  for (int j = 0; j < 6; ++j) {
    k[3][j] = -k[0][j];
    k[4][j] = -k[1][j];
  }
  for (int j = 0; j < 5; ++j) k[5][j] = k[j][5];
  k[5][5] = (L * geom.sin0 + delta[1]) * k[0][5] - (L * geom.cos0 + delta[0]) * k[1][5] -
            k[2][5];
  return k;
}

}  // namespace pframe
