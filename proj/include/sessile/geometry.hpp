#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sessile/equilibrium.hpp"
#include "sessile/surface.hpp"

namespace sessile {

// Dynamic unknowns: eps at the surface grid nodes, endpoint shifts l = L + ell
// and r = R - ell.
struct SurfaceState {
  std::vector<double> eps;
  double l = 0.0;
  double r = 0.0;
  std::vector<double> eps_dot;
  double time = 0.0;
};

// Even-order derivatives of eps at the end points, used to make the
// extension smooth across x1 = +-ell.
struct EndpointJets {
  double d2_left = 0.0, d4_left = 0.0;
  double d2_right = 0.0, d4_right = 0.0;
};

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

// Extension of eps from [-ell, ell] to the real line: odd reflection about
// each end point with a Taylor correction of the even derivatives, times a
// cutoff equal to 1 on |x| <= 1.25 ell and 0 for |x| >= 2.75 ell.
class SurfaceExtension {
 public:
  SurfaceExtension(double ell, std::function<double(double)> eps, EndpointJets jets);
  double operator()(double x) const;
  double ell() const { return ell_; }

 private:
  double ell_;
  std::function<double(double)> eps_;
  EndpointJets jets_;
};

SurfaceExtension extend_surface(const SurfaceGrid& grid, const std::vector<double>& eps);

// Poisson extension of a function sampled on the periodic window
// [-4 ell, 4 ell): multiplier exp(-2 pi |xi| z2).
class PoissonExtension {
 public:
  PoissonExtension(double ell, int n_fft, const std::function<double(double)>& f);
  struct Value {
    double p = 0.0;   // P f(z1, z2)
    double p1 = 0.0;  // d/dz1
    double p2 = 0.0;  // d/dz2
  };
  Value eval(double z1, double z2) const;
  double period() const { return period_; }
  int n_fft() const { return n_; }
  const std::vector<std::complex<double>>& coefficients() const { return a_; }

 private:
  double ell_, left_, period_;
  int n_;
  std::vector<std::complex<double>> a_;
};

// Point of the reference domain with the equilibrium profile data at its x1.
struct GeomPoint {
  double x1 = 0.0, x2 = 0.0;
  double z0 = 0.0, dz0 = 0.0;
};
GeomPoint make_geom_point(const EquilibriumShape& shape, double x1, double x2);

// eta-bar and its gradient in x at a point.
struct EtaBar {
  double eta = 0.0, d1 = 0.0, d2 = 0.0;
};
EtaBar harmonic_extension(const PoissonExtension& P, const GeomPoint& pt);
std::vector<EtaBar> harmonic_extension(const PoissonExtension& P,
                                       const std::vector<GeomPoint>& pts);

struct DilationFields {
  double a_tilde = 0.0, a = 0.0, O = 0.0;
};

double k1(double l, double r, double ell);
double J1_of(double l, double r, double ell);
DilationFields dilation_fields(double l, double r, double ldot, double rdot, double ell,
                               double x1);

// Pointwise Jacobian data of the map Pi.
struct MapCoef {
  double J1 = 1, J2 = 1, A = 0, J = 1, K = 1, K1 = 1, K2 = 1;
  // matrix script-A, row-major
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  EtaBar eta;
  double det() const { return a11 * a22 - a12 * a21; }
};
MapCoef map_coef(const GeomPoint& pt, const EtaBar& eb, double J1, double ell);

struct MappingCoefficients {
  std::vector<GeomPoint> points;
  std::vector<MapCoef> c;
  // Normal and tangent J*A*nu0, J*A*tau0 on the surface points (indices into points).
  std::vector<int> surface_index;
  std::vector<std::array<double, 2>> N, T;
};

MappingCoefficients mapping_coefficients(const EquilibriumShape& shape,
                                         const PoissonExtension& P, double l, double r,
                                         const std::vector<GeomPoint>& pts,
                                         const std::vector<int>& surface_index);

struct DiffeoReport {
  bool ok = true;
  double min_J = 1.0;
  double max_abs_A = 0.0;
  double max_J_minus_1 = 0.0;
  int worst_point = -1;
  std::string reason;
};
DiffeoReport check_diffeomorphism(const MappingCoefficients& mc);
DiffeoReport check_diffeomorphism(const std::vector<MapCoef>& c);

}  // namespace sessile
