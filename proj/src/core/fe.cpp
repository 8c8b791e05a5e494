#include "sessile/fe.hpp"

#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

std::array<double, 6> p2_basis(double xi, double eta) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  return {l0 * (2 * l0 - 1), l1 * (2 * l1 - 1), l2 * (2 * l2 - 1),
          4 * l0 * l1,       4 * l1 * l2,       4 * l2 * l0};
}

std::array<std::array<double, 2>, 6> p2_grad_ref(double xi, double eta) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  // d l0 = (-1,-1), d l1 = (1,0), d l2 = (0,1)
  std::array<std::array<double, 2>, 6> g;
  g[0] = {-(4 * l0 - 1), -(4 * l0 - 1)};
  g[1] = {4 * l1 - 1, 0.0};
  g[2] = {0.0, 4 * l2 - 1};
  g[3] = {4 * (l0 - l1), -4 * l1};
  g[4] = {4 * l2, 4 * l1};
  g[5] = {-4 * l2, 4 * (l0 - l2)};
  return g;
}

std::array<double, 3> p1_basis(double xi, double eta) { return {1.0 - xi - eta, xi, eta}; }

ElementPoint element_map(const Mesh& m, int t, double xi, double eta) {
  const auto& tn = m.tri[t];
  ElementPoint p;
  if (m.curved_edge[t] < 0) {
    const auto &X0 = m.nodes[tn[0]], &X1 = m.nodes[tn[1]], &X2 = m.nodes[tn[2]];
    const double l0 = 1.0 - xi - eta;
    p.x = l0 * X0[0] + xi * X1[0] + eta * X2[0];
    p.y = l0 * X0[1] + xi * X1[1] + eta * X2[1];
    p.jac[0][0] = X1[0] - X0[0];
    p.jac[0][1] = X2[0] - X0[0];
    p.jac[1][0] = X1[1] - X0[1];
    p.jac[1][1] = X2[1] - X0[1];
  } else {
    // quadratic map through the six nodes; the curved edge midpoint lies on the profile
    const auto phi = p2_basis(xi, eta);
    const auto g = p2_grad_ref(xi, eta);
    for (int i = 0; i < 6; ++i) {
      const auto& X = m.nodes[tn[i]];
      p.x += phi[i] * X[0];
      p.y += phi[i] * X[1];
      for (int k = 0; k < 2; ++k) {
        p.jac[0][k] += X[0] * g[i][k];
        p.jac[1][k] += X[1] * g[i][k];
      }
    }
  }
  p.det = p.jac[0][0] * p.jac[1][1] - p.jac[0][1] * p.jac[1][0];
  return p;
}

namespace {

// Physical gradients from reference gradients through the inverse Jacobian.
inline void to_physical(const ElementPoint& ep, double gx, double gy, double& dx, double& dy) {
  const double inv = 1.0 / ep.det;
  dx = (ep.jac[1][1] * gx - ep.jac[1][0] * gy) * inv;
  dy = (-ep.jac[0][1] * gx + ep.jac[0][0] * gy) * inv;
}

}  // namespace

QuadCache build_quad_cache(const Mesh& m, int degree) {
  const TriRule& rule = tri_rule(degree);
  QuadCache qc;
  qc.degree = degree;
  qc.n_per_tri = int(rule.w.size());
  const std::size_t n = m.n_triangles() * rule.w.size();
  qc.x.resize(n);
  qc.y.resize(n);
  qc.w.resize(n);
  qc.phi.resize(n);
  qc.dphi_x.resize(n);
  qc.dphi_y.resize(n);
  qc.psi.resize(n);
  qc.dpsi_x.resize(n);
  qc.dpsi_y.resize(n);
  std::vector<char> bad(m.n_triangles(), 0);
  parallel_for(m.n_triangles(), [&](std::size_t t) {
    for (int q = 0; q < qc.n_per_tri; ++q) {
      const double xi = rule.lambda[q][1], eta = rule.lambda[q][2];
      const auto ep = element_map(m, int(t), xi, eta);
      if (!(ep.det > 0.0)) bad[t] = 1;
      const int k = qc.index(int(t), q);
      qc.x[k] = ep.x;
      qc.y[k] = ep.y;
      qc.w[k] = 0.5 * rule.w[q] * ep.det;
      qc.phi[k] = p2_basis(xi, eta);
      const auto g = p2_grad_ref(xi, eta);
      for (int i = 0; i < 6; ++i) to_physical(ep, g[i][0], g[i][1], qc.dphi_x[k][i], qc.dphi_y[k][i]);
      qc.psi[k] = p1_basis(xi, eta);
      const double gp[3][2] = {{-1, -1}, {1, 0}, {0, 1}};
      for (int i = 0; i < 3; ++i) to_physical(ep, gp[i][0], gp[i][1], qc.dpsi_x[k][i], qc.dpsi_y[k][i]);
    }
  });
  for (char b : bad)
    if (b) throw MeshError("curved element map is not invertible");
  return qc;
}

FieldValue eval_p2(const Mesh& m, const QuadCache& qc, int t, int q, const std::vector<double>& f) {
  const int k = qc.index(t, q);
  FieldValue v;
  for (int i = 0; i < 6; ++i) {
    const double fi = f[m.tri[t][i]];
    v.v += fi * qc.phi[k][i];
    v.dx += fi * qc.dphi_x[k][i];
    v.dy += fi * qc.dphi_y[k][i];
  }
  return v;
}

FieldHessian hessian_p2(const Mesh& m, int t, double xi, double eta, const std::vector<double>& f) {
  auto grad = [&](double a, double b, double& gx, double& gy) {
    const auto ep = element_map(m, t, a, b);
    const auto g = p2_grad_ref(a, b);
    double rx = 0.0, ry = 0.0;
    for (int i = 0; i < 6; ++i) {
      rx += f[m.tri[t][i]] * g[i][0];
      ry += f[m.tri[t][i]] * g[i][1];
    }
    to_physical(ep, rx, ry, gx, gy);
  };
  const double h = 1e-5;
  double gxp, gyp, gxm, gym, hxp, hyp, hxm, hym;
  grad(xi + h, eta, gxp, gyp);
  grad(xi - h, eta, gxm, gym);
  grad(xi, eta + h, hxp, hyp);
  grad(xi, eta - h, hxm, hym);
  // derivatives of (gx, gy) with respect to xi and eta
  const double gx_xi = (gxp - gxm) / (2 * h), gy_xi = (gyp - gym) / (2 * h);
  const double gx_eta = (hxp - hxm) / (2 * h), gy_eta = (hyp - hym) / (2 * h);
  const auto ep = element_map(m, t, xi, eta);
  FieldHessian H;
  double d1, d2;
  to_physical(ep, gx_xi, gx_eta, d1, d2);
  H.xx = d1;
  H.xy = d2;
  to_physical(ep, gy_xi, gy_eta, d1, d2);
  H.yy = d2;
  H.xy = 0.5 * (H.xy + d1);
  return H;
}

}  // namespace sessile
