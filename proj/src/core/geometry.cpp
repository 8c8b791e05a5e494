#include "sessile/geometry.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

SurfaceExtension::SurfaceExtension(double ell, std::function<double(double)> eps,
                                   EndpointJets jets)
    : ell_(ell), eps_(std::move(eps)), jets_(jets) {}

double SurfaceExtension::operator()(double x) const {
  const double l = ell_;
  if (x >= -l && x <= l) return eps_(x);
  const double ax = std::abs(x);
  if (ax >= 2.75 * l) return 0.0;
  const double chi = 1.0 - smooth_step((ax - 1.25 * l) / (1.5 * l));
  const double s = ax - l;
  const double local = 1.0 - smooth_step((s - 0.25 * l) / (0.25 * l));
  double d2, d4, refl;
  if (x > 0) {
    d2 = jets_.d2_right;
    d4 = jets_.d4_right;
    refl = -eps_(l - s);
  } else {
    d2 = jets_.d2_left;
    d4 = jets_.d4_left;
    refl = -eps_(-l + s);
  }
  double s2 = s * s;
  return chi * (refl + local * (d2 * s2 + d4 * s2 * s2 / 12.0));
}

SurfaceExtension extend_surface(const SurfaceGrid& grid, const std::vector<double>& eps) {
  EndpointJets j;
  j.d2_left = grid.d2_left(eps);
  j.d2_right = grid.d2_right(eps);
  return SurfaceExtension(
      grid.ell(), [grid, eps](double x) { return grid.eval(eps, x).first; }, j);
}

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

PoissonExtension::PoissonExtension(double ell, int n_fft, const std::function<double(double)>& f)
    : ell_(ell), left_(-4.0 * ell), period_(8.0 * ell), n_(n_fft) {
  if (n_fft < 16 || n_fft % 2 != 0) throw DomainError("n_fft must be an even number >= 16");
  double* in = fftw_alloc_real(n_);
  fftw_complex* out = fftw_alloc_complex(n_ / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> g(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n_, in, out, FFTW_ESTIMATE);
  }
  for (int j = 0; j < n_; ++j) in[j] = f(left_ + period_ * j / n_);
  fftw_execute(plan);
  a_.resize(n_ / 2 + 1);
  for (int k = 0; k <= n_ / 2; ++k) {
    double scale = (k == 0 || k == n_ / 2) ? 1.0 / n_ : 2.0 / n_;
    a_[k] = std::complex<double>(out[k][0], out[k][1]) * scale;
  }
  {
    std::lock_guard<std::mutex> g(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
}

PoissonExtension::Value PoissonExtension::eval(double z1, double z2) const {
  if (z2 < -1e-12) throw DomainError("harmonic extension evaluated above the surface");
  z2 = std::max(z2, 0.0);
  const double w = 2.0 * M_PI / period_;
  const double rho = std::exp(-w * z2);
  const double th = w * (z1 - left_);
  const std::complex<double> z = rho * std::complex<double>(std::cos(th), std::sin(th));
  const int kmax = n_ / 2;
  int kend = kmax;
  if (rho < 1.0) kend = std::min<int>(kmax, int(std::ceil(std::log(1e-17) / std::log(rho))));
  std::complex<double> zk(1.0, 0.0), s0(0.0, 0.0), s1(0.0, 0.0);
  for (int k = 0; k <= kend; ++k) {
    std::complex<double> t = a_[k] * zk;
    s0 += t;
    s1 += double(k) * t;
    zk *= z;
  }
  Value v;
  v.p = s0.real();
  v.p1 = -w * s1.imag();
  v.p2 = -w * s1.real();
  return v;
}

GeomPoint make_geom_point(const EquilibriumShape& shape, double x1, double x2) {
  auto pv = shape.eval(x1);
  return {x1, x2, pv.z, pv.dz};
}

EtaBar harmonic_extension(const PoissonExtension& P, const GeomPoint& pt) {
  auto v = P.eval(pt.x1, pt.z0 - pt.x2);
  EtaBar e;
  e.eta = v.p;
  e.d1 = v.p1 + v.p2 * pt.dz0;
  e.d2 = -v.p2;
  return e;
}

std::vector<EtaBar> harmonic_extension(const PoissonExtension& P,
                                       const std::vector<GeomPoint>& pts) {
  std::vector<EtaBar> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = harmonic_extension(P, pts[i]); });
  return out;
}

double k1(double l, double r, double ell) {
  double w = 2.0 * ell + r - l;
  if (!(w > 0.1 * ell)) throw DegenerateWidthError("droplet width collapsed: 2 ell + r - l <= ell/10");
  return -(r - l) / w;
}

double J1_of(double l, double r, double ell) {
  double w = 2.0 * ell + r - l;
  if (!(w > 0.1 * ell)) throw DegenerateWidthError("droplet width collapsed: 2 ell + r - l <= ell/10");
  return w / (2.0 * ell);
}

DilationFields dilation_fields(double l, double r, double ldot, double rdot, double ell,
                               double x1) {
  double w = 2.0 * ell + r - l;
  if (!(w > 0.1 * ell)) throw DegenerateWidthError("droplet width collapsed: 2 ell + r - l <= ell/10");
  DilationFields d;
  d.a_tilde = (rdot - ldot) * x1 / (2.0 * ell) + 0.5 * (rdot + ldot);
  d.a = 2.0 * ell * (rdot - ldot) * x1 / (w * w) + 0.5 * (rdot + ldot);
  d.O = -(r - l) * (4.0 * ell + r - l) * (rdot - ldot) * x1 / (2.0 * ell * w * w);
  return d;
}

MapCoef map_coef(const GeomPoint& pt, const EtaBar& eb, double J1, double ell) {
  MapCoef m;
  m.eta = eb;
  m.J1 = J1;
  m.K1 = 1.0 / J1;
  const double x2 = pt.x2, z0 = pt.z0;
  if (z0 < 1e-6 * ell && pt.dz0 != 0.0) {
    // Near a contact corner: one-sided limits of the ratios, with s the
    // direction x2 / (x1 - corner).
    double corner = pt.dz0 < 0.0 ? ell : -ell;
    double dx = pt.x1 - corner;
    double s = dx != 0.0 ? x2 / dx : 0.0;
    double c = pt.dz0;
    double ratio = (eb.d1 + s * eb.d2) / c;  // eta / z0
    double x2_over_z0 = s / c;
    m.J2 = 1.0 + ratio + x2_over_z0 * eb.d2;
    m.A = -(eb.d2 / c) * s * s;
  } else {
    m.J2 = 1.0 + eb.eta / z0 + x2 * eb.d2 / z0;
    m.A = (eb.d1 / z0 - eb.eta * pt.dz0 / (z0 * z0)) * x2;
  }
  m.K2 = 1.0 / m.J2;
  m.J = m.J1 * m.J2;
  m.K = 1.0 / m.J;
  m.a11 = m.K1;
  m.a12 = -m.A * m.K;
  m.a21 = 0.0;
  m.a22 = m.K2;
  return m;
}

MappingCoefficients mapping_coefficients(const EquilibriumShape& shape,
                                         const PoissonExtension& P, double l, double r,
                                         const std::vector<GeomPoint>& pts,
                                         const std::vector<int>& surface_index) {
  MappingCoefficients mc;
  mc.points = pts;
  const double J1 = J1_of(l, r, shape.ell);
  auto eb = harmonic_extension(P, pts);
  mc.c.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { mc.c[i] = map_coef(pts[i], eb[i], J1, shape.ell); });
  mc.surface_index = surface_index;
  for (int i : surface_index) {
    const auto& p = pts[i];
    const auto& m = mc.c[i];
    double nrm = std::sqrt(1.0 + p.dz0 * p.dz0);
    double n0x = -p.dz0 / nrm, n0y = 1.0 / nrm;
    double t0x = 1.0 / nrm, t0y = p.dz0 / nrm;
    // J * script-A = [[J2, -A], [0, J1]]
    mc.N.push_back({m.J2 * n0x - m.A * n0y, m.J1 * n0y});
    mc.T.push_back({m.J2 * t0x - m.A * t0y, m.J1 * t0y});
  }
  return mc;
}

DiffeoReport check_diffeomorphism(const std::vector<MapCoef>& c) {
  DiffeoReport rep;
  double worst = -1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& m = c[i];
    rep.min_J = std::min(rep.min_J, m.J);
    rep.max_abs_A = std::max(rep.max_abs_A, std::abs(m.A));
    rep.max_J_minus_1 = std::max(rep.max_J_minus_1, std::abs(m.J - 1.0));
    double badness = std::max({std::abs(m.J - 1.0), std::abs(m.A), m.J <= 0.0 ? 1e300 : 0.0});
    if (!std::isfinite(m.J) || !std::isfinite(m.A)) badness = 1e300;
    if (badness > worst) {
      worst = badness;
      rep.worst_point = int(i);
    }
  }
  if (!(rep.min_J > 0.0)) {
    rep.ok = false;
    rep.reason = "Jacobian J is not positive";
  } else if (!(rep.max_J_minus_1 <= 0.5)) {
    rep.ok = false;
    rep.reason = "max |J - 1| exceeds 1/2";
  } else if (!(rep.max_abs_A <= 0.5)) {
    rep.ok = false;
    rep.reason = "max |A| exceeds 1/2";
  }
  return rep;
}

DiffeoReport check_diffeomorphism(const MappingCoefficients& mc) {
  return check_diffeomorphism(mc.c);
}

}  // namespace sessile
