#include "sessile/perturbation.hpp"

#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/geometry.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

std::vector<double> mean_curvature(const std::vector<double>& x, const std::vector<double>& zeta) {
  auto w = bary_weights(x);
  auto D = bary_diff_matrix(x, w);
  auto dz = apply_matrix(D, zeta);
  std::vector<double> flux(dz.size());
  for (std::size_t i = 0; i < dz.size(); ++i) flux[i] = dz[i] / std::sqrt(1.0 + dz[i] * dz[i]);
  return apply_matrix(D, flux);
}

namespace {

void check_k1(double k1) {
  if (!(1.0 + k1 > 0.0)) throw DomainError("1 + omega k1 degenerates on [0,1]");
}

}  // namespace

double curvature_flux(double k1, double ex, double z0x) {
  double K1 = 1.0 + k1;
  double v = K1 * (z0x + ex);
  return K1 * v / std::sqrt(1.0 + v * v);
}

double curvature_flux_linear(double k1, double ex, double z0x) {
  double q = 1.0 + z0x * z0x;
  return z0x / std::sqrt(q) + k1 * z0x / std::sqrt(q) + (k1 * z0x + ex) / (q * std::sqrt(q));
}

double remainder_R_at(double k1, double ex, double z0x) {
  check_k1(k1);
  return curvature_flux(k1, ex, z0x) - curvature_flux_linear(k1, ex, z0x);
}

double remainder_R_integral_at(double k1, double ex, double z0x) {
  check_k1(k1);
  const auto& g = gauss01(32);
  double acc = 0.0;
  for (std::size_t q = 0; q < g.x.size(); ++q) {
    double om = g.x[q];
    double a = 1.0 + om * k1;
    double b = z0x + om * ex;
    double v = a * b;
    double vp = k1 * b + a * ex;
    double s = 1.0 + v * v;
    double s32 = s * std::sqrt(s);
    double f2 = 2.0 * k1 * (k1 * b + 2.0 * a * ex) / s32 - 3.0 * a * a * b * vp * vp / (s32 * s);
    acc += g.w[q] * f2 * (1.0 - om);
  }
  return acc;
}

double remainder_Q_at(double k1, double ex, double z0x) {
  check_k1(k1);
  double K1 = 1.0 + k1;
  double v = K1 * (z0x + ex);
  double q = 1.0 + z0x * z0x;
  return 1.0 / std::sqrt(1.0 + v * v) - 1.0 / std::sqrt(q) +
         z0x * (k1 * z0x + ex) / (q * std::sqrt(q));
}

double remainder_Q_integral_at(double k1, double ex, double z0x) {
  check_k1(k1);
  const auto& g = gauss01(32);
  double acc = 0.0;
  for (std::size_t q = 0; q < g.x.size(); ++q) {
    double om = g.x[q];
    double a = 1.0 + om * k1;
    double b = z0x + om * ex;
    double v = a * b;
    double vp = k1 * b + a * ex;
    double vpp = 2.0 * k1 * ex;
    double s = 1.0 + v * v;
    double s32 = s * std::sqrt(s);
    double h2 = -(vp * vp + v * vpp) / s32 + 3.0 * v * v * vp * vp / (s32 * s);
    acc += g.w[q] * h2 * (1.0 - om);
  }
  return acc;
}

namespace {

template <class F>
std::vector<double> map_inputs(const RemainderInputs& in, F f) {
  if (in.eps_x.size() != in.zeta0_x.size())
    throw DomainError("remainder inputs must be aligned");
  std::vector<double> out(in.eps_x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(in.k1, in.eps_x[i], in.zeta0_x[i]);
  return out;
}

}  // namespace

std::vector<double> remainder_R(const RemainderInputs& in) { return map_inputs(in, remainder_R_at); }
std::vector<double> remainder_R_integral(const RemainderInputs& in) {
  return map_inputs(in, remainder_R_integral_at);
}
std::vector<double> remainder_Q(const RemainderInputs& in) { return map_inputs(in, remainder_Q_at); }
std::vector<double> remainder_Q_integral(const RemainderInputs& in) {
  return map_inputs(in, remainder_Q_integral_at);
}

std::vector<double> remainder_S(const TransportInputs& in) {
  const double J1 = J1_of(in.l, in.r, in.ell);
  std::vector<double> out(in.x1.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto d = dilation_fields(in.l, in.r, in.ldot, in.rdot, in.ell, in.x1[i]);
    out[i] = (J1 - 1.0) * in.eps_t[i] + d.a_tilde * in.eps_x[i] + (d.a_tilde - d.a) * in.zeta0_x[i];
  }
  return out;
}

std::vector<double> remainder_O(const TransportInputs& in) {
  std::vector<double> out(in.x1.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = dilation_fields(in.l, in.r, in.ldot, in.rdot, in.ell, in.x1[i]).O;
  return out;
}

}  // namespace sessile
