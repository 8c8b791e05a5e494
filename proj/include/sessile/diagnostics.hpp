#pragma once

#include <vector>

#include "sessile/equilibrium.hpp"
#include "sessile/mesh.hpp"
#include "sessile/params.hpp"
#include "sessile/surface.hpp"

namespace sessile {

// Gauss points on the surface partition with the equilibrium profile sampled
// there. zeta = zeta0 + eps with eps continuous piecewise quadratic.
struct SurfaceQuadrature {
  SurfaceGrid grid;
  SurfaceGrid::Quadrature q;
  std::vector<double> z0, dz0;
  double ell = 0.0;
  double zeta0_integral = 0.0;  // sum of w * zeta0
};
SurfaceQuadrature make_surface_quadrature(const SurfaceGrid& grid, const EquilibriumShape& shape,
                                          int points_per_element = 6);

// zeta and d zeta / dx1 at every quadrature point.
void surface_profile(const SurfaceQuadrature& sq, const std::vector<double>& eps,
                     std::vector<double>& zeta, std::vector<double>& dzeta);

// E = sum w J1 [ g/2 zeta^2 + sigma sqrt(1 + K1^2 zeta'^2) ] - [gamma] 2 ell J1, for
// a profile given by samples on [-ell, ell] in reference coordinates.
double energy_of_samples(const std::vector<double>& w, const std::vector<double>& zeta,
                         const std::vector<double>& dzeta, double J1, double ell,
                         const PhysicalParams& p);
double energy(const SurfaceQuadrature& sq, const PhysicalParams& p, double J1,
              const std::vector<double>& eps);

// Derivatives of the energy with respect to the surface nodal values and J1.
struct EnergyGradient {
  std::vector<double> d_eps;  // per surface node (end points included)
  double d_J1 = 0.0;
};
EnergyGradient energy_gradient(const SurfaceQuadrature& sq, const PhysicalParams& p, double J1,
                               const std::vector<double>& eps);

// M = J1 * int zeta dx1 with the profile integral taken by the same quadrature.
double mass(const SurfaceQuadrature& sq, double J1, const std::vector<double>& eps);

// Physical dissipation: viscous and slip part (quadratic form of the assembled
// operator without contact terms) plus W(Ldot) Ldot + W(Rdot) Rdot.
struct Dissipation {
  double bulk = 0.0;
  double contact = 0.0;
  double total() const { return bulk + contact; }
};
Dissipation dissipation(double bulk_quadratic_form, double ldot, double rdot, const PhysicalParams& p);

// (dE/dt + D) / max(D, floor) with the central difference of E over 2 dt.
double energy_identity_residual(double E_prev, double E_next, double two_dt, double D,
                                double floor = 1e-14);
// Series version: central differences inside, one-sided second-order at the
// ends. Returns the unnormalized dE/dt + D per row.
std::vector<double> energy_identity_series(const std::vector<double>& t, const std::vector<double>& E,
                                           const std::vector<double>& D);

// Corner-weighted Sobolev norm (sum over |alpha| <= k of int dist^(2 delta) |d^alpha f|^2)^(1/2)
// of a nodal quadratic field on the mesh; dist is the distance to the nearest contact corner.
double weighted_norm(const Mesh& m, const std::vector<double>& f, int k, double delta);

struct DecayFit {
  double lambda = 0.0;
  double r2 = 0.0;
  int samples = 0;
};
// Least-squares fit of log(max(v, floor)) = c - lambda t after dropping the
// first 10 % of the samples.
DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& v,
                        double floor = 1e-300);

// Center of mass of the physical droplet.
struct CenterOfMass {
  double X1 = 0.0, X2 = 0.0;
};
CenterOfMass center_of_mass(const SurfaceQuadrature& sq, double l, double r,
                            const std::vector<double>& eps);

// Dynamic contact angles pi - atan(K1 |zeta'(+-ell)|).
struct ContactAngles {
  double left = 0.0, right = 0.0;
};
ContactAngles contact_angles(const SurfaceGrid& grid, const EquilibriumShape& shape, double J1,
                             const std::vector<double>& eps);

}  // namespace sessile
