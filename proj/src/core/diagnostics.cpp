#include "sessile/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/fe.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

SurfaceQuadrature make_surface_quadrature(const SurfaceGrid& grid, const EquilibriumShape& shape,
                                          int points_per_element) {
  SurfaceQuadrature sq;
  sq.grid = grid;
  sq.q = grid.quadrature(points_per_element);
  sq.ell = grid.ell();
  const std::size_t n = sq.q.x.size();
  sq.z0.resize(n);
  sq.dz0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pv = shape.eval(sq.q.x[i]);
    sq.z0[i] = pv.z;
    sq.dz0[i] = pv.dz;
    sq.zeta0_integral += sq.q.w[i] * pv.z;
  }
  return sq;
}

void surface_profile(const SurfaceQuadrature& sq, const std::vector<double>& eps,
                     std::vector<double>& zeta, std::vector<double>& dzeta) {
  const std::size_t n = sq.q.x.size();
  zeta.resize(n);
  dzeta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int e = sq.q.elem[i];
    double v = 0.0, d = 0.0;
    for (int k = 0; k < 3; ++k) {
      v += eps[2 * e + k] * sq.q.phi[i][k];
      d += eps[2 * e + k] * sq.q.dphi[i][k];
    }
    zeta[i] = sq.z0[i] + v;
    dzeta[i] = sq.dz0[i] + d;
  }
}

double energy_of_samples(const std::vector<double>& w, const std::vector<double>& zeta,
                         const std::vector<double>& dzeta, double J1, double ell,
                         const PhysicalParams& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * (0.5 * p.g * J1 * zeta[i] * zeta[i] +
                   p.sigma * std::sqrt(J1 * J1 + dzeta[i] * dzeta[i]));
  return acc - p.gamma_jump * 2.0 * ell * J1;
}

double energy(const SurfaceQuadrature& sq, const PhysicalParams& p, double J1,
              const std::vector<double>& eps) {
  std::vector<double> z, dz;
  surface_profile(sq, eps, z, dz);
  return energy_of_samples(sq.q.w, z, dz, J1, sq.ell, p);
}

EnergyGradient energy_gradient(const SurfaceQuadrature& sq, const PhysicalParams& p, double J1,
                               const std::vector<double>& eps) {
  std::vector<double> z, dz;
  surface_profile(sq, eps, z, dz);
  EnergyGradient g;
  g.d_eps.assign(sq.grid.n_nodes(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int e = sq.q.elem[i];
    const double w = sq.q.w[i];
    const double s = std::sqrt(J1 * J1 + dz[i] * dz[i]);
    for (int k = 0; k < 3; ++k)
      g.d_eps[2 * e + k] +=
          w * (p.g * J1 * z[i] * sq.q.phi[i][k] + p.sigma * dz[i] / s * sq.q.dphi[i][k]);
    g.d_J1 += w * (0.5 * p.g * z[i] * z[i] + p.sigma * J1 / s);
  }
  g.d_J1 -= p.gamma_jump * 2.0 * sq.ell;
  return g;
}

double mass(const SurfaceQuadrature& sq, double J1, const std::vector<double>& eps) {
  double acc = sq.zeta0_integral;
  for (std::size_t i = 0; i < sq.q.x.size(); ++i) {
    const int e = sq.q.elem[i];
    for (int k = 0; k < 3; ++k) acc += sq.q.w[i] * eps[2 * e + k] * sq.q.phi[i][k];
  }
  return J1 * acc;
}

Dissipation dissipation(double bulk_quadratic_form, double ldot, double rdot, const PhysicalParams& p) {
  Dissipation d;
  d.bulk = bulk_quadratic_form;
  d.contact = p.response.W(ldot) * ldot + p.response.W(rdot) * rdot;
  return d;
}

double energy_identity_residual(double E_prev, double E_next, double two_dt, double D, double floor) {
  const double dEdt = (E_next - E_prev) / two_dt;
  return (dEdt + D) / std::max(D, floor);
}

std::vector<double> energy_identity_series(const std::vector<double>& t, const std::vector<double>& E,
                                           const std::vector<double>& D) {
  const std::size_t n = t.size();
  std::vector<double> r(n, 0.0);
  if (n < 3) return r;
  for (std::size_t i = 0; i < n; ++i) {
    double dEdt;
    if (i == 0) {
      const double h = t[1] - t[0];
      dEdt = (-3.0 * E[0] + 4.0 * E[1] - E[2]) / (2.0 * h);
    } else if (i == n - 1) {
      const double h = t[n - 1] - t[n - 2];
      dEdt = (3.0 * E[n - 1] - 4.0 * E[n - 2] + E[n - 3]) / (2.0 * h);
    } else {
      dEdt = (E[i + 1] - E[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    r[i] = dEdt + D[i];
  }
  return r;
}

double weighted_norm(const Mesh& m, const std::vector<double>& f, int k, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("weight exponent delta must lie in (0, 1)");
  if (k < 0 || k > 2) throw DomainError("weighted norm order must be 0, 1 or 2");
  if (f.size() != m.n_nodes()) throw DomainError("field does not match the mesh");
  const QuadCache qc = build_quad_cache(m, 8);
  const TriRule& rule = tri_rule(8);
  const double ell = m.ell();
  double acc = 0.0;
  for (int t = 0; t < int(m.n_triangles()); ++t)
    for (int q = 0; q < qc.n_per_tri; ++q) {
      const int i = qc.index(t, q);
      const double x = qc.x[i], y = qc.y[i];
      const double dist = std::min(std::hypot(x - ell, y), std::hypot(x + ell, y));
      const double wgt = std::pow(dist, 2.0 * delta);
      const auto v = eval_p2(m, qc, t, q, f);
      double s = v.v * v.v;
      if (k >= 1) s += v.dx * v.dx + v.dy * v.dy;
      if (k >= 2) {
        const auto H = hessian_p2(m, t, rule.lambda[q][1], rule.lambda[q][2], f);
        s += H.xx * H.xx + 2.0 * H.xy * H.xy + H.yy * H.yy;
      }
      acc += qc.w[i] * wgt * s;
    }
  return std::sqrt(acc);
}

DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& v, double floor) {
  if (t.size() != v.size()) throw FitError("time and value series differ in length");
  const std::size_t skip = t.size() / 10;
  if (t.size() - skip < 20) throw FitError("decay fit needs at least 20 samples after the transient");
  bool any_positive = false;
  for (std::size_t i = skip; i < v.size(); ++i) any_positive = any_positive || v[i] > 0.0;
  if (!any_positive) throw FitError("decay fit: values are non-positive throughout");
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = double(t.size() - skip);
  std::vector<double> y(t.size());
  for (std::size_t i = skip; i < t.size(); ++i) {
    y[i] = std::log(std::max(v[i], floor));
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double den = n * stt - st * st;
  if (!(den > 0.0)) throw FitError("decay fit: degenerate time samples");
  const double slope = (n * sty - st * sy) / den;
  const double icpt = (sy - slope * st) / n;
  double ss_res = 0, ss_tot = 0;
  const double ym = sy / n;
  for (std::size_t i = skip; i < t.size(); ++i) {
    const double r = y[i] - (icpt + slope * t[i]);
    ss_res += r * r;
    ss_tot += (y[i] - ym) * (y[i] - ym);
  }
  DecayFit fit;
  fit.lambda = -slope;
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.samples = int(n);
  return fit;
}

CenterOfMass center_of_mass(const SurfaceQuadrature& sq, double l, double r,
                            const std::vector<double>& eps) {
  const double J1 = 1.0 + (r - l) / (2.0 * sq.ell);
  const double shift = 0.5 * (l + r);
  std::vector<double> z, dz;
  surface_profile(sq, eps, z, dz);
  double M = 0, m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double w = sq.q.w[i] * J1;
    const double z1 = J1 * sq.q.x[i] + shift;
    M += w * z[i];
    m1 += w * z1 * z[i];
    m2 += w * 0.5 * z[i] * z[i];
  }
  return {m1 / M, m2 / M};
}

ContactAngles contact_angles(const SurfaceGrid& grid, const EquilibriumShape& shape, double J1,
                             const std::vector<double>& eps) {
  const double sl = shape.eval(-shape.ell).dz + grid.slope_left(eps);
  const double sr = shape.eval(shape.ell).dz + grid.slope_right(eps);
  return {M_PI - std::atan(std::abs(sl) / J1), M_PI - std::atan(std::abs(sr) / J1)};
}

}  // namespace sessile
