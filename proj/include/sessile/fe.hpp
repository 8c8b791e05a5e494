#pragma once

#include <array>
#include <vector>

#include "sessile/mesh.hpp"

namespace sessile {

// Reference triangle (0,0), (1,0), (0,1); barycentric (1 - xi - eta, xi, eta).
std::array<double, 6> p2_basis(double xi, double eta);
// Gradients with respect to (xi, eta).
std::array<std::array<double, 2>, 6> p2_grad_ref(double xi, double eta);
std::array<double, 3> p1_basis(double xi, double eta);

// Element map of triangle t: affine, or quadratic (isoparametric) when an edge
// lies on the free surface.
struct ElementPoint {
  double x = 0.0, y = 0.0;
  double jac[2][2] = {{0, 0}, {0, 0}};  // d(x,y)/d(xi,eta)
  double det = 0.0;
};
ElementPoint element_map(const Mesh& m, int t, double xi, double eta);

// Per-element quadrature data in reference-domain coordinates.
struct QuadCache {
  int degree = 0;
  int n_per_tri = 0;
  std::vector<double> x, y, w;                   // w includes |det|
  std::vector<std::array<double, 6>> phi;        // P2
  std::vector<std::array<double, 6>> dphi_x, dphi_y;
  std::vector<std::array<double, 3>> psi;        // P1
  std::vector<std::array<double, 3>> dpsi_x, dpsi_y;
  int index(int t, int q) const { return t * n_per_tri + q; }
};
QuadCache build_quad_cache(const Mesh& m, int degree);

// Interpolate a P2 nodal field at a cached point: value and gradient.
struct FieldValue {
  double v = 0.0, dx = 0.0, dy = 0.0;
};
FieldValue eval_p2(const Mesh& m, const QuadCache& qc, int t, int q, const std::vector<double>& f);

// Second derivatives of P2 functions on an element, by finite differencing of
// the exact map gradients (used for weighted second-order norms).
struct FieldHessian {
  double xx = 0.0, xy = 0.0, yy = 0.0;
};
FieldHessian hessian_p2(const Mesh& m, int t, double xi, double eta, const std::vector<double>& f);

}  // namespace sessile
