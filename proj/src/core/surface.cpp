#include "sessile/surface.hpp"

#include <algorithm>
#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

SurfaceGrid::SurfaceGrid(std::vector<double> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 2) throw DomainError("surface grid needs at least one element");
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (!(v_[i] > v_[i - 1])) throw DomainError("surface grid vertices must increase");
  x_.resize(2 * (v_.size() - 1) + 1);
  for (std::size_t e = 0; e + 1 < v_.size(); ++e) {
    x_[2 * e] = v_[e];
    x_[2 * e + 1] = 0.5 * (v_[e] + v_[e + 1]);
  }
  x_.back() = v_.back();
}

SurfaceGrid SurfaceGrid::along_profile(const EquilibriumShape& shape, int n_elements) {
  if (n_elements < 2 || n_elements % 2 != 0)
    throw DomainError("surface grid needs an even number of elements");
  const double ell = shape.ell;
  // cumulative arclength over [0, ell]
  const int m = 1024;
  const auto& g = gauss01(4);
  std::vector<double> xs(m + 1), s(m + 1, 0.0);
  for (int k = 0; k <= m; ++k) xs[k] = ell * k / m;
  for (int k = 0; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      double t = xs[k] + (xs[k + 1] - xs[k]) * g.x[q];
      double d = shape.eval(t).dz;
      acc += g.w[q] * std::sqrt(1.0 + d * d);
    }
    s[k + 1] = s[k] + acc * (xs[k + 1] - xs[k]);
  }
  const int half = n_elements / 2;
  std::vector<double> right(half + 1);
  for (int i = 0; i <= half; ++i) {
    double target = s.back() * i / half;
    auto it = std::lower_bound(s.begin(), s.end(), target);
    int k = std::clamp(int(it - s.begin()), 1, m);
    double f = (target - s[k - 1]) / (s[k] - s[k - 1]);
    right[i] = xs[k - 1] + f * (xs[k] - xs[k - 1]);
  }
  right.front() = 0.0;
  right.back() = ell;
  std::vector<double> v;
  for (int i = half; i >= 1; --i) v.push_back(-right[i]);
  for (int i = 0; i <= half; ++i) v.push_back(right[i]);
  return SurfaceGrid(std::move(v));
}

int SurfaceGrid::locate(double x) const {
  auto it = std::upper_bound(v_.begin(), v_.end(), x);
  int e = int(it - v_.begin()) - 1;
  return std::clamp(e, 0, n_elements() - 1);
}

std::pair<double, double> SurfaceGrid::eval(const std::vector<double>& f, double x) const {
  int e = locate(x);
  double a = v_[e], h = v_[e + 1] - a;
  double t = (x - a) / h;
  double f0 = f[2 * e], f1 = f[2 * e + 1], f2 = f[2 * e + 2];
  double val = f0 * (1 - t) * (1 - 2 * t) + f1 * 4 * t * (1 - t) + f2 * t * (2 * t - 1);
  double der = (f0 * (4 * t - 3) + f1 * (4 - 8 * t) + f2 * (4 * t - 1)) / h;
  return {val, der};
}

double SurfaceGrid::d2_left(const std::vector<double>& f) const {
  double h = v_[1] - v_[0];
  return 4.0 * (f[0] - 2.0 * f[1] + f[2]) / (h * h);
}

double SurfaceGrid::d2_right(const std::vector<double>& f) const {
  int e = n_elements() - 1;
  double h = v_[e + 1] - v_[e];
  return 4.0 * (f[2 * e] - 2.0 * f[2 * e + 1] + f[2 * e + 2]) / (h * h);
}

double SurfaceGrid::slope_left(const std::vector<double>& f) const {
  double h = v_[1] - v_[0];
  return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / h;
}

double SurfaceGrid::slope_right(const std::vector<double>& f) const {
  int e = n_elements() - 1;
  double h = v_[e + 1] - v_[e];
  return (f[2 * e] - 4.0 * f[2 * e + 1] + 3.0 * f[2 * e + 2]) / h;
}

SurfaceGrid::Quadrature SurfaceGrid::quadrature(int q) const {
  const auto& g = gauss01(q);
  Quadrature Q;
  Q.per_element = q;
  for (int e = 0; e < n_elements(); ++e) {
    double a = v_[e], h = v_[e + 1] - a;
    for (int k = 0; k < q; ++k) {
      double t = g.x[k];
      Q.x.push_back(a + h * t);
      Q.w.push_back(h * g.w[k]);
      Q.elem.push_back(e);
      Q.phi.push_back({(1 - t) * (1 - 2 * t), 4 * t * (1 - t), t * (2 * t - 1)});
      Q.dphi.push_back({(4 * t - 3) / h, (4 - 8 * t) / h, (4 * t - 1) / h});
    }
  }
  return Q;
}

std::vector<double> SurfaceGrid::basis_integrals() const {
  std::vector<double> s(n_nodes(), 0.0);
  for (int e = 0; e < n_elements(); ++e) {
    double h = v_[e + 1] - v_[e];
    s[2 * e] += h / 6.0;
    s[2 * e + 1] += 2.0 * h / 3.0;
    s[2 * e + 2] += h / 6.0;
  }
  return s;
}

Eigen::SparseMatrix<double> SurfaceGrid::mass_matrix() const {
  std::vector<Eigen::Triplet<double>> trip;
  static const double m[3][3] = {{4, 2, -1}, {2, 16, 2}, {-1, 2, 4}};
  for (int e = 0; e < n_elements(); ++e) {
    double h = v_[e + 1] - v_[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trip.emplace_back(2 * e + i, 2 * e + j, m[i][j] * h / 30.0);
  }
  Eigen::SparseMatrix<double> M(n_nodes(), n_nodes());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

double SurfaceGrid::integrate(const std::vector<double>& f) const {
  auto s = basis_integrals();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += s[i] * f[i];
  return acc;
}

}  // namespace sessile
