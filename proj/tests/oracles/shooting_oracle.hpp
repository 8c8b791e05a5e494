#pragma once

// Independent equilibrium profile by shooting in the inclination angle.
// Along the right half of the profile, with psi the inclination and
// q = P0 - g z the curvature times sigma:
//   dx/dpsi = sigma cos(psi) / q,  dz/dpsi = -sigma sin(psi) / q,
//   dA/dpsi = z dx/dpsi.
// The apex height h and pressure P0 solve z(psi0) = 0 and 2 A(psi0) = M,
// with tan(psi0) = sqrt(sigma^2 - gamma^2) / gamma. Newton starts from the
// circular cap at g = 0 and follows g in small steps.

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Droplet {
  double g, sigma, gamma, M;
};

struct ShootResult {
  double h = 0, P0 = 0, ell = 0;
  std::vector<double> psi, x, z;  // samples along the right half
};

using State = std::array<double, 3>;  // x, z, A

inline double inclination(const Droplet& d) {
  return std::atan(std::sqrt(d.sigma * d.sigma - d.gamma * d.gamma) / d.gamma);
}

inline void shoot(const Droplet& d, double g, double h, double P0, const std::vector<double>& psi_out,
                  std::vector<State>& out, double tol = 1e-14) {
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&](const State& s, State& ds, double psi) {
    const double q = P0 - g * s[1];
    ds[0] = d.sigma * std::cos(psi) / q;
    ds[1] = -d.sigma * std::sin(psi) / q;
    ds[2] = s[1] * ds[0];
  };
  State s{0.0, h, 0.0};
  out.clear();
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, s, psi_out.begin(), psi_out.end(), 1e-3,
                          [&](const State& st, double) { out.push_back(st); });
}

inline ShootResult solve(const Droplet& d, int n_samples = 400) {
  const double psi0 = inclination(d);
  std::vector<double> ends{0.0, psi0};
  std::vector<State> st;
  // Unknowns: v = log(apex curvature times sigma) and h; P0 = exp(v) + g h
  // keeps P0 - g z positive along the whole profile. The start is the
  // circular cap of area M: radius rc, h = rc (1 - cos psi0), P0 = sigma / rc.
  const double rc = std::sqrt(d.M / (psi0 - std::sin(psi0) * std::cos(psi0)));
  double h = rc * (1.0 - std::cos(psi0)), v = std::log(d.sigma / rc);
  double tol = 1e-9;
  auto residual = [&](double g, double hh, double vv) {
    shoot(d, g, hh, std::exp(vv) + g * hh, ends, st, tol);
    return std::array<double, 2>{st.back()[1], 2.0 * st.back()[2] - d.M};
  };
  // loose continuation, then a tight final solve
  const int n_cont = 8;
  double g = 0.0;
  for (int k = 1; k <= n_cont + 1; ++k) {
    g = d.g * std::min(k, n_cont) / n_cont;
    const bool last = k == n_cont + 1;
    tol = last ? 1e-14 : 1e-9;
    for (int it = 0; it < 60; ++it) {
      const auto F = residual(g, h, v);
      const double nf = std::hypot(F[0], F[1]);
      if (nf < (last ? 1e-14 : 1e-8)) break;
      const double eh = (last ? 1e-7 : 1e-5) * std::max(1.0, h), ev = last ? 1e-7 : 1e-5;
      const auto Fh = residual(g, h + eh, v), Fv = residual(g, h, v + ev);
      const double a = (Fh[0] - F[0]) / eh, b = (Fv[0] - F[0]) / ev;
      const double c = (Fh[1] - F[1]) / eh, e = (Fv[1] - F[1]) / ev;
      const double det = a * e - b * c;
      if (det == 0.0) throw std::runtime_error("oracle: singular Newton matrix");
      const double dh = -(e * F[0] - b * F[1]) / det, dv = -(-c * F[0] + a * F[1]) / det;
      double t = 1.0;
      bool decreased = false;
      while (t > 1e-3) {
        const auto Fn = residual(g, h + t * dh, v + t * dv);
        if (std::hypot(Fn[0], Fn[1]) < nf) {
          decreased = true;
          break;
        }
        t *= 0.5;
      }
      if (!decreased && nf < 1e-12) break;  // at the roundoff floor
      h += t * dh;
      v += t * dv;
      if (it == 59 && last && nf > 1e-12) throw std::runtime_error("oracle: no convergence");
    }
  }
  ShootResult r;
  r.h = h;
  r.P0 = std::exp(v) + g * h;
  for (int i = 0; i < n_samples; ++i) r.psi.push_back(psi0 * i / (n_samples - 1));
  shoot(d, g, h, r.P0, r.psi, st);
  for (const auto& s : st) {
    r.x.push_back(s[0]);
    r.z.push_back(s[1]);
  }
  r.ell = r.x.back();
  return r;
}

}  // namespace oracle
