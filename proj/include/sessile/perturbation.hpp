#pragma once

#include <vector>

namespace sessile {

// H(zeta) = d/dx (zeta' / sqrt(1 + zeta'^2)) by barycentric differentiation
// on the nodes x.
std::vector<double> mean_curvature(const std::vector<double>& x, const std::vector<double>& zeta);

struct RemainderInputs {
  double k1 = 0.0;
  std::vector<double> eps_x;    // d eps / dx1
  std::vector<double> zeta0_x;  // d zeta0 / dx1
};

// Curvature flux remainder: direct difference form and the integral form.
std::vector<double> remainder_R(const RemainderInputs& in);
std::vector<double> remainder_R_integral(const RemainderInputs& in);
// Remainder of 1/sqrt(1 + |d_A1 zeta|^2).
std::vector<double> remainder_Q(const RemainderInputs& in);
std::vector<double> remainder_Q_integral(const RemainderInputs& in);
// Pointwise versions.
double remainder_R_at(double k1, double eps_x, double zeta0_x);
double remainder_R_integral_at(double k1, double eps_x, double zeta0_x);
double remainder_Q_at(double k1, double eps_x, double zeta0_x);
double remainder_Q_integral_at(double k1, double eps_x, double zeta0_x);

// Full nonlinear curvature flux K1^2 zeta' / sqrt(1 + K1^2 zeta'^2) and its
// part linear in (k1, eps').
double curvature_flux(double k1, double eps_x, double zeta0_x);
double curvature_flux_linear(double k1, double eps_x, double zeta0_x);

struct TransportInputs {
  double l = 0, r = 0, ldot = 0, rdot = 0, ell = 1;
  std::vector<double> x1;
  std::vector<double> eps_t, eps_x, zeta0_x;
};
// (J1 - 1) eps_t + a_tilde eps_x + (a_tilde - a) zeta0_x
std::vector<double> remainder_S(const TransportInputs& in);
// Remainder of the dilation field a - a_tilde at each x1.
std::vector<double> remainder_O(const TransportInputs& in);

}  // namespace sessile
