#pragma once

#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "sessile/equilibrium.hpp"

namespace sessile {

// Continuous piecewise-quadratic functions on a partition of [-ell, ell].
// Node 2e is the left vertex of element e, 2e+1 its midpoint.
class SurfaceGrid {
 public:
  SurfaceGrid() = default;
  explicit SurfaceGrid(std::vector<double> vertices);
  // Partition with vertices equally spaced in arclength of the profile.
  static SurfaceGrid along_profile(const EquilibriumShape& shape, int n_elements);

  int n_elements() const { return int(v_.size()) - 1; }
  int n_nodes() const { return 2 * n_elements() + 1; }
  const std::vector<double>& vertices() const { return v_; }
  const std::vector<double>& nodes() const { return x_; }
  double ell() const { return v_.back(); }

  int locate(double x) const;
  // Value and first derivative of the P2 interpolant with nodal values f.
  std::pair<double, double> eval(const std::vector<double>& f, double x) const;
  // Second derivative on the first / last element.
  double d2_left(const std::vector<double>& f) const;
  double d2_right(const std::vector<double>& f) const;
  // One-sided derivative at the end points.
  double slope_left(const std::vector<double>& f) const;
  double slope_right(const std::vector<double>& f) const;

  // Sample f (nodal interpolation).
  template <class F>
  std::vector<double> interpolate(F&& f) const {
    std::vector<double> out(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) out[i] = f(x_[i]);
    return out;
  }

  // Gauss points and weights in x1 over all elements (q points per element).
  struct Quadrature {
    std::vector<double> x, w;
    std::vector<int> elem;
    // Local basis values and derivatives (3 per point).
    std::vector<std::array<double, 3>> phi, dphi;
    int per_element = 0;
  };
  Quadrature quadrature(int q) const;

  // Integral of each basis function.
  std::vector<double> basis_integrals() const;
  // Mass matrix over all nodes.
  Eigen::SparseMatrix<double> mass_matrix() const;
  double integrate(const std::vector<double>& f) const;

 private:
  std::vector<double> v_;
  std::vector<double> x_;
};

}  // namespace sessile
