#pragma once

#include <vector>

#include "sessile/params.hpp"

namespace sessile {

struct ProfileValue {
  double z = 0.0;    // zeta0
  double dz = 0.0;   // d zeta0 / dx1
  double d2z = 0.0;  // d^2 zeta0 / dx1^2
};

// The static droplet centered at the origin, stored on Chebyshev-Lobatto
// samples over [-ell, ell].
class EquilibriumShape {
 public:
  PhysicalParams params;
  double mass = 0.0;
  double ell = 0.0;
  double P0 = 0.0;
  double psi0 = 0.0;
  double apex = 0.0;

  std::vector<double> x;    // nodes, increasing
  std::vector<double> psi;  // inclination at each node
  std::vector<double> z, dz, d2z;

  ProfileValue eval(double x1) const;
  double zeta0(double x1) const { return eval(x1).z; }
  // Clenshaw-Curtis quadrature of zeta0 over [-ell, ell].
  double mass_quadrature() const;
  double slope() const;

  std::vector<double> bary_w;
  std::vector<double> cc_w;
};

double equilibrium_pressure(const PhysicalParams& p, double M, double ell);
// Supremum of admissible half-widths.
double width_ell_max(const PhysicalParams& p, double M);
double width_residual(const PhysicalParams& p, double M, double ell, double abs_tol = 1e-12);
double width_residual_dell(const PhysicalParams& p, double M, double ell,
                           double abs_tol = 1e-12);
double solve_width(const PhysicalParams& p, double M, double abs_tol = 1e-12);

// Max over interior samples of |g zeta0 - sigma H(zeta0) - P0|, with H the
// spectral derivative of the stored flux zeta0'/sqrt(1 + zeta0'^2).
double young_laplace_residual(const EquilibriumShape& s);
// Max over samples of |D zeta0 - zeta0'| with D the spectral derivative.
double slope_consistency(const EquilibriumShape& s);

EquilibriumShape solve_equilibrium(const PhysicalParams& p, double M, int n_profile = 2048,
                                   double abs_tol = 1e-12);

}  // namespace sessile
