#include "sessile/equilibrium.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <string>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

namespace {

double q_const(const PhysicalParams& p, double M) {
  return M * p.g + 2.0 * std::sqrt(p.sigma * p.sigma - p.gamma_jump * p.gamma_jump);
}

}  // namespace

double equilibrium_pressure(const PhysicalParams& p, double M, double ell) {
  return q_const(p, M) / (2.0 * ell);
}

double width_ell_max(const PhysicalParams& p, double M) {
  return q_const(p, M) / std::sqrt(8.0 * p.g * (p.sigma - p.gamma_jump));
}

double width_residual(const PhysicalParams& p, double M, double ell, double abs_tol) {
  const double Q = q_const(p, M);
  const double psi0 = contact_inclination(p);
  const double c = 8.0 * p.g * ell * ell;
  if (Q * Q - c * (p.sigma - p.gamma_jump) <= 0.0)
    throw DomainError("width_residual: radicand nonpositive for ell = " + std::to_string(ell));
  auto f = [&](double psi) {
    double cs = std::cos(psi);
    return 2.0 * p.sigma * cs / std::sqrt(Q * Q - c * (p.sigma * cs - p.gamma_jump));
  };
  return integrate_adaptive(f, 0.0, psi0, abs_tol) - 1.0;
}

double width_residual_dell(const PhysicalParams& p, double M, double ell, double abs_tol) {
  const double Q = q_const(p, M);
  const double psi0 = contact_inclination(p);
  const double c = 8.0 * p.g * ell * ell;
  if (Q * Q - c * (p.sigma - p.gamma_jump) <= 0.0)
    throw DomainError("width_residual: radicand nonpositive for ell = " + std::to_string(ell));
  auto f = [&](double psi) {
    double cs = std::cos(psi);
    double k = p.sigma * cs - p.gamma_jump;
    double rad = Q * Q - c * k;
    return 2.0 * p.sigma * cs * 8.0 * p.g * ell * k / (rad * std::sqrt(rad));
  };
  return integrate_adaptive(f, 0.0, psi0, abs_tol);
}

double solve_width(const PhysicalParams& p, double M, double abs_tol) {
  p.validate();
  if (!(M > 0.0)) throw ValidationError("drop.mass must be positive");
  const double lmax = width_ell_max(p, M);
  double lo = 0.0;
  double hi = 0.0;
  for (int k = 1; k <= 60; ++k) {
    double cand = lmax * (1.0 - std::ldexp(1.0, -k));
    double r = width_residual(p, M, cand, abs_tol);
    if (r > 0.0) {
      hi = cand;
      break;
    }
    lo = cand;
  }
  if (hi == 0.0) throw ConvergenceError("solve_width: could not bracket the half-width");
  while (hi - lo > 1e-6 * lmax) {
    double mid = 0.5 * (lo + hi);
    if (width_residual(p, M, mid, abs_tol) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double ell = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    double r = width_residual(p, M, ell, abs_tol);
    double d = width_residual_dell(p, M, ell, abs_tol);
    double next = ell - r / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (r > 0.0)
      hi = std::min(hi, ell);
    else
      lo = std::max(lo, ell);
    double step = std::abs(next - ell);
    ell = next;
    if (step <= 1e-13 * ell) return ell;
  }
  throw ConvergenceError("solve_width: Newton polish did not converge");
}

EquilibriumShape solve_equilibrium(const PhysicalParams& p, double M, int n_profile,
                                   double abs_tol) {
  if (n_profile < 16 || n_profile % 2 != 0)
    throw ValidationError("profile size must be an even number >= 16");
  EquilibriumShape s;
  s.params = p;
  s.mass = M;
  s.ell = solve_width(p, M, abs_tol);
  s.P0 = equilibrium_pressure(p, M, s.ell);
  s.psi0 = contact_inclination(p);

  const double P0 = s.P0, g = p.g, sg = p.sigma, gm = p.gamma_jump;
  auto height = [&](double psi) {
    double k = sg * std::cos(psi) - gm;
    return 2.0 * k / (P0 + std::sqrt(P0 * P0 - 2.0 * g * k));
  };
  s.apex = height(0.0);

  // With sin(psi/2) = a sinh(u), a = q_a / (2 sqrt(g sigma)) and q_a the apex
  // value of P0 - g zeta0, the radicand becomes q_a^2 cosh^2(u) and
  //   dr/du = sigma cos(psi) / (sqrt(g sigma) cos(psi/2)),
  // which stays smooth even for flat drops where q_a is tiny.
  const double qa = std::sqrt(std::max(P0 * P0 - 2.0 * g * (sg - gm), 0.0));
  if (!(qa > 0.0)) throw DomainError("equilibrium: apex curvature vanishes");
  const double a = qa / (2.0 * std::sqrt(g * sg));
  const double rs = sg / std::sqrt(g * sg);
  auto psi_of = [&](double u) { return 2.0 * std::asin(std::min(1.0, a * std::sinh(u))); };
  auto drdu = [&](double u) {
    const double ps = psi_of(u);
    return rs * std::cos(ps) / std::cos(0.5 * ps);
  };
  const double u_end = std::asinh(std::sin(0.5 * s.psi0) / a);
  const QuadRule1D& gl = gauss01(16);
  auto panel = [&](double u0, double u1) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * drdu(u0 + (u1 - u0) * gl.x[i]);
    return acc * (u1 - u0);
  };

  // r(u) on uniform panels and its monotone inverse as an initial guess
  const int nt = 513;
  std::vector<double> tu(nt), tr(nt);
  tu[0] = 0.0;
  tr[0] = 0.0;
  for (int k = 1; k < nt; ++k) {
    tu[k] = u_end * k / (nt - 1);
    tr[k] = tr[k - 1] + panel(tu[k - 1], tu[k]);
  }
  auto r_of = [&](double u) {
    auto it = std::upper_bound(tu.begin(), tu.end(), u);
    int k = std::clamp(int(it - tu.begin()) - 1, 0, nt - 1);
    return tr[k] + panel(tu[k], u);
  };
  std::vector<double> inv_x = tr, inv_y = tu;
  boost::math::interpolators::pchip<std::vector<double>> inv(std::move(inv_x), std::move(inv_y));
  const double r_end = tr.back();

  const int n = n_profile;
  s.x = cheb_lobatto(n, -s.ell, s.ell);
  s.bary_w = cheb_lobatto_bary_weights(n);
  s.cc_w = clenshaw_curtis_weights(n, -s.ell, s.ell);
  s.psi.assign(n, 0.0);
  s.z.assign(n, 0.0);
  s.dz.assign(n, 0.0);
  s.d2z.assign(n, 0.0);

  const double slope = endpoint_slope(p);
  std::vector<double> psi_half(n / 2);
  parallel_for(n / 2, [&](std::size_t jj) {
    int j = n / 2 + int(jj);  // right half, x > 0
    double target = s.x[j] / s.ell * r_end;
    double ps;
    if (j == n - 1) {
      ps = s.psi0;
    } else {
      double u = std::clamp(inv(target), 0.0, u_end);
      for (int it = 0; it < 20; ++it) {
        double next = std::clamp(u - (r_of(u) - target) / drdu(u), 0.0, u_end);
        double d = std::abs(next - u);
        u = next;
        if (d <= 4e-16 * u_end) break;
      }
      ps = std::min(psi_of(u), s.psi0);
    }
    psi_half[jj] = ps;
  });
  for (int jj = 0; jj < n / 2; ++jj) {
    int jr = n / 2 + jj, jl = n / 2 - 1 - jj;
    double ps = psi_half[jj];
    double h = (jr == n - 1) ? 0.0 : height(ps);
    double t = (jr == n - 1) ? slope : std::tan(ps);
    double c = std::cos(ps);
    double curv = (g * h - P0) / (sg * c * c * c);
    s.psi[jr] = ps;
    s.psi[jl] = ps;
    s.z[jr] = h;
    s.z[jl] = h;
    s.dz[jr] = -t;
    s.dz[jl] = t;
    s.d2z[jr] = curv;
    s.d2z[jl] = curv;
  }
  return s;
}

ProfileValue EquilibriumShape::eval(double x1) const {
  const double tol = 1e-12 * ell;
  if (!(x1 >= -ell - tol && x1 <= ell + tol))
    throw DomainError("profile evaluation outside [-ell, ell]");
  x1 = std::clamp(x1, -ell, ell);
  ProfileValue v;
  double den = 0.0;
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) {
    double d = x1 - x[j];
    if (d == 0.0) return {z[j], dz[j], d2z[j]};
    double c = bary_w[j] / d;
    den += c;
    v.z += c * z[j];
    v.dz += c * dz[j];
    v.d2z += c * d2z[j];
  }
  v.z /= den;
  v.dz /= den;
  v.d2z /= den;
  return v;
}

double EquilibriumShape::mass_quadrature() const {
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += cc_w[j] * z[j];
  return s;
}

double EquilibriumShape::slope() const { return endpoint_slope(params); }

double young_laplace_residual(const EquilibriumShape& s) {
  const auto D = bary_diff_matrix(s.x, s.bary_w);
  std::vector<double> flux(s.x.size());
  for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = s.dz[i] / std::sqrt(1.0 + s.dz[i] * s.dz[i]);
  const auto H = apply_matrix(D, flux);
  const PhysicalParams& p = s.params;
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < flux.size(); ++i)
    r = std::max(r, std::abs(p.g * s.z[i] - p.sigma * H[i] - s.P0));
  return r;
}

double slope_consistency(const EquilibriumShape& s) {
  const auto dz = apply_matrix(bary_diff_matrix(s.x, s.bary_w), s.z);
  double r = 0.0;
  for (std::size_t i = 0; i < dz.size(); ++i) r = std::max(r, std::abs(dz[i] - s.dz[i]));
  return r;
}

}  // namespace sessile
