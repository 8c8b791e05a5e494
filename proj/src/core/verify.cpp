#include "sessile/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>

#include "sessile/diagnostics.hpp"
#include "sessile/dynamics.hpp"
#include "sessile/equilibrium.hpp"
#include "sessile/errors.hpp"
#include "sessile/geometry.hpp"
#include "sessile/mesh.hpp"
#include "sessile/numerics.hpp"
#include "sessile/perturbation.hpp"
#include "sessile/stokes.hpp"

namespace sessile {

namespace {

struct Suite {
  std::vector<CheckResult> out;

  // body returns (value, limit, pass); an exception fails the check.
  struct Outcome {
    double value = 0.0, limit = 0.0;
    bool pass = false;
    std::string note;
  };
  void check(const std::string& module, const std::string& name, const std::function<Outcome()>& body) {
    CheckResult r;
    r.module = module;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = body();
      r.value = o.value;
      r.limit = o.limit;
      r.pass = o.pass;
      r.note = o.note;
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
};

Suite::Outcome at_most(double value, double limit, std::string note = {}) {
  return {value, limit, value <= limit, std::move(note)};
}
Suite::Outcome at_least(double value, double limit, std::string note = {}) {
  return {value, limit, value >= limit, std::move(note)};
}

// Smooth test function on [-ell, ell] vanishing at both ends.
std::vector<double> sine_modes(const SurfaceGrid& grid, const std::vector<double>& a) {
  const double ell = grid.ell();
  return grid.interpolate([&](double x) {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::sin(double(k + 1) * M_PI * (x + ell) / (2.0 * ell));
    return v;
  });
}

PoissonExtension poisson_of(const SurfaceGrid& grid, const std::vector<double>& eps, int n_fft) {
  const SurfaceExtension ext = extend_surface(grid, eps);
  return PoissonExtension(grid.ell(), n_fft, [&](double x) { return ext(x); });
}

double h1_norm_sampled(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x0 = a + i * h, x1 = x0 + h, fm = f(0.5 * (x0 + x1)), d = (f(x1) - f(x0)) / h;
    s += h * (fm * fm + d * d);
  }
  return std::sqrt(s);
}

SurfaceState mirrored(const SurfaceState& s) {
  SurfaceState m = s;
  std::reverse(m.eps.begin(), m.eps.end());
  m.l = -s.r;
  m.r = -s.l;
  m.eps_dot.clear();
  return m;
}

void equilibrium_checks(Suite& S, const RunConfig& cfg, const EquilibriumShape& sh) {
  const PhysicalParams& p = sh.params;
  const std::string mod = "equilibrium";
  S.check(mod, "mass quadrature |int zeta0 - M| / M", [&] {
    return at_most(std::abs(sh.mass_quadrature() - sh.mass) / sh.mass, 1e-10);
  });
  S.check(mod, "zeta0 vanishes at the ends, positive, even, decreasing on [0, ell]", [&] {
    const std::size_t n = sh.x.size();
    double end = std::max(std::abs(sh.zeta0(-sh.ell)), std::abs(sh.zeta0(sh.ell)));
    double asym = 0.0;
    bool pos = true, mono = true;
    for (std::size_t i = 0; i < n; ++i) {
      asym = std::max(asym, std::abs(sh.z[i] - sh.z[n - 1 - i]));
      if (i > 0 && i + 1 < n && !(sh.z[i] > 0.0)) pos = false;
      if (sh.x[i] >= 0.0 && i + 1 < n && sh.z[i + 1] > sh.z[i]) mono = false;
    }
    Suite::Outcome o = at_most(std::max(end, asym), 1e-12);
    o.pass = o.pass && pos && mono;
    if (!pos) o.note = "not positive inside";
    if (!mono) o.note = "not monotone on [0, ell]";
    return o;
  });
  S.check(mod, "end point slope equals sqrt(sigma^2 - gamma^2) / gamma", [&] {
    const double want = endpoint_slope(p);
    const double e = std::max(std::abs(sh.eval(-sh.ell).dz - want), std::abs(sh.eval(sh.ell).dz + want));
    return at_most(e / want, 1e-10);
  });
  S.check(mod, "Young-Laplace residual g zeta0 - sigma H(zeta0) - P0", [&] {
    return at_most(young_laplace_residual(sh), 1e-7);
  });
  S.check(mod, "stored slope matches the differentiated profile", [&] {
    return at_most(slope_consistency(sh), 1e-8);
  });
  S.check(mod, "Young angle and contact inclination are complementary", [&] {
    const double e = std::abs(young_angle(p) + sh.psi0 - M_PI) + std::abs(std::tan(sh.psi0) - endpoint_slope(p));
    Suite::Outcome o = at_most(e, 1e-12);
    o.pass = o.pass && sh.psi0 > 0.0 && sh.psi0 < 0.5 * M_PI;
    return o;
  });
  S.check(mod, "width residual vanishes at the solved half-width", [&] {
    return at_most(std::abs(width_residual(p, sh.mass, sh.ell, cfg.quad_tol)), 1e-10);
  });
  S.check(mod, "width residual strictly increasing (64 samples)", [&] {
    const double top = width_ell_max(p, sh.mass);
    double prev = -1e300, worst = 1e300;
    for (int i = 1; i <= 64; ++i) {
      const double v = width_residual(p, sh.mass, top * i / 65.0, cfg.quad_tol);
      worst = std::min(worst, v - prev);
      prev = v;
    }
    return Suite::Outcome{worst, 0.0, worst > 0.0, "minimum increment"};
  });
  S.check(mod, "translated profile satisfies the same balance", [&] {
    EquilibriumShape t = sh;
    const double c = 0.37 * sh.ell;
    for (double& x : t.x) x += c;
    const double a = young_laplace_residual(t);
    return at_most(a, 1e-7);
  });
}

void geometry_checks(Suite& S, const RunConfig& cfg, const EquilibriumShape& sh, const DropletModel& model) {
  const std::string mod = "geometry";
  const SurfaceGrid& grid = model.grid();
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto random_eps = [&](double scale) {
    std::vector<double> a(6);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = scale * U(rng) / double((k + 1) * (k + 1));
    return sine_modes(grid, a);
  };
  S.check(mod, "trace of the harmonic extension equals eps (20 random smooth eps)", [&] {
    double worst = 0.0;
    const double ell = sh.ell;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> a(6);
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = 0.02 * U(rng) / double((k + 1) * (k + 1));
      // Sine modes vanish with all even derivatives at both ends.
      auto f = [&](double x) {
        double v = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::sin(double(k + 1) * M_PI * (x + ell) / (2.0 * ell));
        return v;
      };
      const SurfaceExtension ext(ell, f, EndpointJets{});
      const PoissonExtension P(ell, cfg.n_fft, [&](double x) { return ext(x); });
      for (double x : grid.nodes()) {
        const EtaBar e = harmonic_extension(P, make_geom_point(sh, x, sh.zeta0(x)));
        worst = std::max(worst, std::abs(e.eta - f(x)));
      }
    }
    return at_most(worst, 1e-8);
  });
  S.check(mod, "single Fourier mode gets the multiplier exp(-2 pi xi z2)", [&] {
    const double per = 8.0 * sh.ell, xi = 3.0 / per;
    const PoissonExtension P(sh.ell, cfg.n_fft, [&](double x) { return std::cos(2.0 * M_PI * xi * x); });
    double worst = 0.0;
    for (double z1 : {-0.7 * sh.ell, 0.0, 0.4 * sh.ell})
      for (double z2 : {0.0, 0.1, 0.5, 1.0}) {
        const double want = std::exp(-2.0 * M_PI * xi * z2) * std::cos(2.0 * M_PI * xi * z1);
        worst = std::max(worst, std::abs(P.eval(z1, z2).p - want));
      }
    return at_most(worst, 1e-10);
  });
  S.check(mod, "extension bounded in H1: |E eps|_H1(R) <= 4 |eps|_H1 (20 random eps)", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto eps = random_eps(1.0);
      const SurfaceExtension ext = extend_surface(grid, eps);
      auto inside = [&](double x) { return grid.eval(eps, std::clamp(x, -sh.ell, sh.ell)).first; };
      const double num = h1_norm_sampled([&](double x) { return ext(x); }, -3.0 * sh.ell, 3.0 * sh.ell, 6000);
      const double den = h1_norm_sampled(inside, -sh.ell, sh.ell, 2000);
      worst = std::max(worst, num / den);
    }
    return at_most(worst, 4.0);
  });
  S.check(mod, "extension, harmonic extension and map deviation are linear in eps", [&] {
    const auto e1 = random_eps(0.01), e2 = random_eps(0.01);
    std::vector<double> e12(e1.size());
    for (std::size_t i = 0; i < e1.size(); ++i) e12[i] = e1[i] + e2[i];
    const PoissonExtension P1 = poisson_of(grid, e1, cfg.n_fft), P2 = poisson_of(grid, e2, cfg.n_fft),
                           P12 = poisson_of(grid, e12, cfg.n_fft);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double x1 = 0.98 * sh.ell * U(rng);
      const double x2 = sh.zeta0(x1) * 0.5 * (1.0 + U(rng));
      const GeomPoint g = make_geom_point(sh, x1, x2);
      const EtaBar a = harmonic_extension(P1, g), b = harmonic_extension(P2, g), c = harmonic_extension(P12, g);
      worst = std::max({worst, std::abs(c.eta - a.eta - b.eta), std::abs(c.d1 - a.d1 - b.d1),
                        std::abs(c.d2 - a.d2 - b.d2)});
      const MapCoef ma = map_coef(g, a, 1.0, sh.ell), mb = map_coef(g, b, 1.0, sh.ell),
                    mc = map_coef(g, c, 1.0, sh.ell);
      worst = std::max({worst, std::abs((mc.J2 - 1.0) - (ma.J2 - 1.0) - (mb.J2 - 1.0)),
                        std::abs(mc.A - ma.A - mb.A)});
    }
    return at_most(worst, 1e-12);
  });
  S.check(mod, "J1 K1 = 1, J2 K2 = 1 and det(script A) = K on a random state", [&] {
    const auto eps = random_eps(0.02);
    const PoissonExtension P = poisson_of(grid, eps, cfg.n_fft);
    std::vector<GeomPoint> pts;
    for (int k = 0; k < 200; ++k) {
      const double x1 = 0.999 * sh.ell * U(rng);
      pts.push_back(make_geom_point(sh, x1, sh.zeta0(x1) * 0.5 * (1.0 + U(rng))));
    }
    const auto mc = mapping_coefficients(sh, P, -0.03, 0.05, pts, {});
    double worst = 0.0;
    for (const auto& c : mc.c)
      worst = std::max({worst, std::abs(c.J1 * c.K1 - 1.0), std::abs(c.J2 * c.K2 - 1.0), std::abs(c.det() - c.K)});
    return at_most(worst, 1e-12);
  });
  S.check(mod, "identity map at eps = 0, l = r = 0", [&] {
    const auto eps = std::vector<double>(grid.n_nodes(), 0.0);
    const PoissonExtension P = poisson_of(grid, eps, cfg.n_fft);
    std::vector<GeomPoint> pts;
    for (int k = 0; k < 50; ++k) {
      const double x1 = 0.99 * sh.ell * U(rng);
      pts.push_back(make_geom_point(sh, x1, sh.zeta0(x1) * 0.5 * (1.0 + U(rng))));
    }
    const auto mc = mapping_coefficients(sh, P, 0.0, 0.0, pts, {});
    double worst = 0.0;
    for (const auto& c : mc.c)
      worst = std::max({worst, std::abs(c.J - 1.0), std::abs(c.A), std::abs(c.a11 - 1.0), std::abs(c.a12),
                        std::abs(c.a21), std::abs(c.a22 - 1.0)});
    return at_most(worst, 1e-14);
  });
  S.check(mod, "map sends the surface to zeta0 + eps and keeps the substrate", [&] {
    SurfaceState s = model.initial_state(InitMode::SurfaceMode, 3, 0.02);
    const MapField f = model.map_field(s);
    const Mesh& m = model.mesh();
    double worst = 0.0;
    const auto nodes = m.surface_nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) worst = std::max(worst, std::abs(f.d[nodes[i]] - s.eps[i]));
    for (std::size_t i = 0; i < m.n_nodes(); ++i)
      if (m.tag[i] == NodeTag::Bottom) worst = std::max(worst, std::abs(f.d[i]));
    return at_most(worst, 1e-12);
  });
  S.check(mod, "diffeomorphism check is monotone in amplitude and fails for large eps", [&] {
    bool prev_ok = true, monotone = true, failed = false;
    double threshold = 0.0;
    for (int i = 1; i <= 60; ++i) {
      const double a = 0.01 * i;
      const SurfaceState s = model.initial_state(InitMode::SurfaceMode, 2, a);
      const bool ok = model.map_validity(model.map_field(s)).ok;
      if (ok && !prev_ok) monotone = false;
      if (!ok && prev_ok) threshold = a;
      failed = failed || !ok;
      prev_ok = ok;
    }
    return Suite::Outcome{threshold, 0.0, monotone && failed && threshold > 0.0, "first failing amplitude of mode 2"};
  });
}

void perturbation_checks(Suite& S) {
  const std::string mod = "perturbation";
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  S.check(mod, "remainders: difference and integral forms agree (100 random inputs)", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double k1 = 0.3 * U(rng), ex = 0.5 * U(rng), zx = 2.0 * U(rng);
      worst = std::max({worst, std::abs(remainder_R_at(k1, ex, zx) - remainder_R_integral_at(k1, ex, zx)),
                        std::abs(remainder_Q_at(k1, ex, zx) - remainder_Q_integral_at(k1, ex, zx))});
    }
    return at_most(worst, 1e-10);
  });
  S.check(mod, "remainders scale quadratically (log-log slope 2 +- 0.05)", [&] {
    // sup norm over a profile of inputs, least-squares slope over t in [1e-4, 1e-1]
    std::vector<double> zx(64), ex(64);
    for (int i = 0; i < 64; ++i) {
      const double s = -1.0 + 2.0 * (i + 0.5) / 64.0;
      zx[i] = -1.3 * s;
      ex[i] = 0.4 * std::sin(3.0 * s) + 0.2;
    }
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
      for (double k1v : {0.3, -0.2, 0.0}) {
        std::vector<double> lt, lf;
        for (int j = 0; j <= 12; ++j) {
          const double t = std::pow(10.0, -4.0 + 3.0 * j / 12.0);
          double sup = 0.0;
          for (int i = 0; i < 64; ++i)
            sup = std::max(sup, std::abs(which ? remainder_Q_at(t * k1v, t * ex[i], zx[i])
                                               : remainder_R_at(t * k1v, t * ex[i], zx[i])));
          lt.push_back(std::log(t));
          lf.push_back(std::log(sup));
        }
        double mt = 0, mf = 0;
        for (std::size_t j = 0; j < lt.size(); ++j) mt += lt[j], mf += lf[j];
        mt /= lt.size();
        mf /= lf.size();
        double num = 0, den = 0;
        for (std::size_t j = 0; j < lt.size(); ++j) num += (lt[j] - mt) * (lf[j] - mf), den += (lt[j] - mt) * (lt[j] - mt);
        worst = std::max(worst, std::abs(num / den - 2.0));
      }
    }
    return at_most(worst, 0.05);
  });
  S.check(mod, "full flux = linear part + remainder", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double k1 = 0.3 * U(rng), ex = 0.5 * U(rng), zx = 2.0 * U(rng);
      worst = std::max(worst, std::abs(curvature_flux(k1, ex, zx) - curvature_flux_linear(k1, ex, zx) -
                                       remainder_R_at(k1, ex, zx)));
    }
    return at_most(worst, 1e-13);
  });
  S.check(mod, "remainders vanish at the equilibrium", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double zx = 2.0 * U(rng);
      worst = std::max({worst, std::abs(remainder_R_at(0, 0, zx)), std::abs(remainder_Q_at(0, 0, zx)),
                        std::abs(remainder_R_integral_at(0, 0, zx)), std::abs(remainder_Q_integral_at(0, 0, zx))});
    }
    TransportInputs in;
    in.x1 = {-0.5, 0.0, 0.7};
    in.eps_t = in.eps_x = {0, 0, 0};
    in.zeta0_x = {0.3, 0.0, -0.4};
    for (double v : remainder_S(in)) worst = std::max(worst, std::abs(v));
    for (double v : remainder_O(in)) worst = std::max(worst, std::abs(v));
    return at_most(worst, 0.0);
  });
  S.check(mod, "O equals a - a_tilde", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double ell = 0.5 + std::abs(U(rng)), l = 0.2 * ell * U(rng), r = 0.2 * ell * U(rng);
      const DilationFields d = dilation_fields(l, r, U(rng), U(rng), ell, ell * U(rng));
      worst = std::max(worst, std::abs(d.O - (d.a - d.a_tilde)));
    }
    return at_most(worst, 1e-14);
  });
  S.check(mod, "|O| <= 2 |k1| (|ldot| + |rdot|)", [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      TransportInputs in;
      in.ell = 0.5 + std::abs(U(rng));
      in.l = 0.2 * in.ell * U(rng);
      in.r = 0.2 * in.ell * U(rng);
      in.ldot = U(rng);
      in.rdot = U(rng);
      in.x1 = {in.ell * U(rng)};
      const double bound = std::abs(k1(in.l, in.r, in.ell)) * (std::abs(in.ldot) + std::abs(in.rdot));
      if (bound > 0.0) worst = std::max(worst, std::abs(remainder_O(in)[0]) / bound);
    }
    return at_most(worst, 2.0, "largest |O| / (|k1| (|ldot| + |rdot|))");
  });
  S.check(mod, "d1 a = -d_t k1 (finite differences)", [&] {
    double worst = 0.0;
    const double ell = 1.3, h = 1e-5;
    for (int i = 0; i < 50; ++i) {
      const double l = 0.2 * U(rng), r = 0.2 * U(rng), ld = U(rng), rd = U(rng), x = ell * U(rng);
      const double da = (dilation_fields(l, r, ld, rd, ell, x + h).a - dilation_fields(l, r, ld, rd, ell, x - h).a) / (2 * h);
      const double dk = (k1(l + h * ld, r + h * rd, ell) - k1(l - h * ld, r - h * rd, ell)) / (2 * h);
      worst = std::max(worst, std::abs(da + dk));
    }
    return at_most(worst, 1e-8);
  });
}

void stokes_checks(Suite& S, const DropletModel& model) {
  const std::string mod = "stokes";
  const Mesh& m = model.mesh();
  S.check(mod, "mesh: min angle >= 15 deg, boundary nodes on the boundary, conforming", [&] {
    const MeshQuality q = mesh_quality(m);
    Suite::Outcome o = at_least(q.min_angle_deg, 15.0);
    o.pass = o.pass && q.max_boundary_offset <= 1e-10 && q.conforming;
    o.note = "boundary offset " + std::to_string(q.max_boundary_offset);
    return o;
  });
  S.check(mod, "mesh chord error <= (ell / n_surface)^2", [&] {
    const MeshQuality q = mesh_quality(m);
    const double lim = std::pow(m.ell() / m.n_surface, 2);
    return at_most(q.chord_error, lim);
  });
  const StokesDiscretization& d = model.discretization();
  const PhysicalParams& p = model.params();
  S.check(mod, "viscous block symmetric; zero data gives zero flow", [&] {
    AssemblyOptions o;
    o.contact_terms = false;
    StokesSystem sys = assemble_system(d, identity_map(m), p, o);
    const Eigen::SparseMatrix<double> At = sys.A.transpose();
    const double asym = (sys.A - At).norm() / sys.A.norm();
    sys.rhs.setZero();
    const FlowField f = solve_stokes(sys);
    const double mx = std::max(f.u.cwiseAbs().maxCoeff(), 0.0);
    return at_most(std::max(asym, mx), 1e-14);
  });
  S.check(mod, "quadratic form equals viscous plus slip integrals (random v)", [&] {
    AssemblyOptions o;
    o.contact_terms = false;
    const StokesSystem sys = assemble_system(d, identity_map(m), p, o);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Eigen::VectorXd v(d.n_u);
    for (int i = 0; i < d.n_u; ++i) v[i] = U(rng);
    const FlowField f = expand_flow(d, FlowField{{}, {}, {}, v});
    const QuadCache& qc = d.qc;
    double visc = 0.0;
    for (int t = 0; t < int(m.n_triangles()); ++t)
      for (int q = 0; q < qc.n_per_tri; ++q) {
        const FieldValue a = eval_p2(m, qc, t, q, f.u1), b = eval_p2(m, qc, t, q, f.u2);
        const double d11 = 2 * a.dx, d22 = 2 * b.dy, d12 = a.dy + b.dx;
        visc += qc.w[qc.index(t, q)] * 0.5 * p.mu * (d11 * d11 + d22 * d22 + 2 * d12 * d12);
      }
    double slip = 0.0;
    const auto& g = gauss01(6);
    for (const auto& e : m.bottom_edges) {
      const double x0 = m.nodes[e.n0][0], x1 = m.nodes[e.n1][0];
      for (std::size_t k = 0; k < g.x.size(); ++k) {
        const double s = g.x[k];
        const double u = f.u1[e.n0] * (1 - s) * (1 - 2 * s) + f.u1[e.nm] * 4 * s * (1 - s) + f.u1[e.n1] * s * (2 * s - 1);
        slip += g.w[k] * (x1 - x0) * p.beta * u * u;
      }
    }
    const double qf = quadratic_form(sys, v);
    Suite::Outcome out = at_most(std::abs(qf - visc - slip) / qf, 1e-10);
    out.pass = out.pass && qf > 0.0;
    return out;
  });
  S.check(mod, "transformed assembly at eps = 0 equals the untransformed one", [&] {
    AssemblyOptions o;
    o.contact_terms = false;
    const StokesSystem a = assemble_system(d, identity_map(m), p, o);
    const StokesSystem b = assemble_system(d, model.map_field(model.equilibrium_state()), p, o);
    auto max_abs = [](const Eigen::SparseMatrix<double>& M) {
      double v = 0.0;
      for (int k = 0; k < M.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it) v = std::max(v, std::abs(it.value()));
      return v;
    };
    const double e = std::max(max_abs(a.A - b.A), max_abs(a.B - b.B));
    return at_most(e, 1e-12);
  });
}

void dynamics_checks(Suite& S, const RunConfig& cfg, std::shared_ptr<const EquilibriumShape> shape,
                     const VerifyOptions& vo) {
  const int n = vo.dynamics_n_surface;
  const DynamicsOptions dopt = dynamics_options(cfg);
  const DropletModel model(shape, n, cfg.delta_grade, dopt);
  RunConfig rc = cfg;
  rc.dt = vo.dynamics_dt;
  rc.every = 1000000;
  const std::string mod = "dynamics";

  S.check(mod, "contact velocity vanishes at the equilibrium slope and is antisymmetric", [&] {
    const PhysicalParams& p = shape->params;
    const double s0 = endpoint_slope(p);
    double e = std::abs(contact_velocity(p, s0, Side::Left)) + std::abs(contact_velocity(p, s0, Side::Right));
    for (double s : {0.5, 1.0, 2.0}) e += std::abs(contact_velocity(p, s, Side::Left) + contact_velocity(p, s, Side::Right));
    return at_most(e, 1e-14);
  });
  S.check(mod, "equilibrium is stationary (10 steps, change per step)", [&] {
    RunConfig c = rc;
    c.t_end = 10 * c.dt;
    c.init_mode = InitMode::Equilibrium;
    const RunResult r = run(model, c);
    double e = std::max(std::abs(r.final_state.l), std::abs(r.final_state.r));
    for (double v : r.final_state.eps) e = std::max(e, std::abs(v));
    return at_most(e / 10.0, 1e-9);
  });

  RunConfig pc = rc;
  pc.init_mode = InitMode::SurfaceMode;
  pc.init_k = 2;
  pc.amplitude = 0.02;
  pc.t_end = 0.2;
  RunResult pr;
  bool have_run = false;
  std::string run_error;
  try {
    pr = run(model, pc);
    have_run = true;
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  auto need_run = [&] {
    if (!have_run) throw StepError("perturbed run failed: " + run_error);
  };
  S.check(mod, "mass drift over a perturbed run (relative)", [&] {
    need_run();
    double e = 0.0;
    for (const auto& row : pr.rows) e = std::max(e, std::abs(row.M - shape->mass) / shape->mass);
    return at_most(e, 1e-8);
  });
  S.check(mod, "mass correction per step", [&] {
    need_run();
    return at_most(pr.max_mass_correction, 1e-8);
  });
  S.check(mod, "contact law W(rate) = sigma cos(theta) - gamma at every step", [&] {
    need_run();
    double e = 0.0;
    for (const auto& row : pr.rows) e = std::max(e, row.contact_law_residual);
    return at_most(e, std::max(cfg.picard_tol, 1e-10));
  });
  S.check(mod, "mirrored initial data give mirrored trajectories", [&] {
    RunConfig c = rc;
    c.t_end = 20 * c.dt;
    const SurfaceState a0 = model.initial_state(InitMode::SurfaceMode, 3, 0.02);
    const RunResult a = run_from(model, a0, c), b = run_from(model, mirrored(a0), c);
    const SurfaceState bm = mirrored(b.final_state);
    double e = std::max(std::abs(a.final_state.l - bm.l), std::abs(a.final_state.r - bm.r));
    for (std::size_t i = 0; i < bm.eps.size(); ++i) e = std::max(e, std::abs(a.final_state.eps[i] - bm.eps[i]));
    return at_most(e, 1e-10);
  });
  S.check(mod, "transport of a pure dilation without flow advects the profile", [&] {
    const double ell = shape->ell, l = 0.0, r = 0.0, c = 0.3;
    std::vector<double> x = {-0.5 * ell, 0.1 * ell, 0.8 * ell}, dz = {0.4, -0.1, -1.2}, zero(3, 0.0);
    const auto rate = transport_rate(J1_of(l, r, ell), -c, c, ell, x, dz, zero);
    double e = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double at = dilation_fields(l, r, -c, c, ell, x[i]).a_tilde;
      e = std::max(e, std::abs(rate[i] - at * dz[i]));
    }
    return at_most(e, 1e-15);
  });

  const std::string dmod = "diagnostics";
  S.check(dmod, "D >= 0 and Delta E nonincreasing along the run", [&] {
    need_run();
    double worst_rise = -1e300, min_D = 1e300;
    for (std::size_t i = 0; i < pr.rows.size(); ++i) {
      min_D = std::min(min_D, pr.rows[i].D);
      if (i) worst_rise = std::max(worst_rise, pr.rows[i].dE - pr.rows[i - 1].dE);
    }
    return Suite::Outcome{worst_rise, 1e-10, worst_rise <= 1e-10 && min_D >= 0.0, "largest step rise of Delta E"};
  });
  S.check(dmod, "energy identity residual converges at order >= 1.8 in dt", [&] {
    need_run();
    RunConfig c = pc;
    c.dt = 0.5 * pc.dt;
    const RunResult h = run(model, c);
    auto worst = [](const RunResult& r) {
      double e = 0.0, D = 0.0;
      for (const auto& row : r.rows) {
        e = std::max(e, std::abs(row.dEdt_plus_D));
        D = std::max(D, row.D);
      }
      return e / D;
    };
    const double a = worst(pr), b = worst(h);
    return at_least(std::log2(a / b), 1.8, "residual " + std::to_string(a) + " -> " + std::to_string(b));
  });
  S.check(dmod, "contact-slope identity error shrinks at order >= 1.8 under refinement", [&] {
    RunConfig c = rc;
    c.init_mode = InitMode::SurfaceMode;
    c.init_k = 2;
    c.amplitude = 0.02;
    c.t_end = 20 * c.dt;
    std::vector<double> err;
    for (int k : {1, 2, 4}) {
      const DropletModel mk(shape, n * k, cfg.delta_grade, dopt);
      double worst = 0.0;
      run(mk, c, [&](int, const DropletModel& mm, const SurfaceState& s, const Evaluation& ev) {
        const double J1 = J1_of(s.l, s.r, mm.shape().ell);
        const double eL = mm.grid().slope_left(s.eps) - contact_slope_identity(mm.params(), mm.shape(), J1, ev.ldot, Side::Left);
        const double eR = mm.grid().slope_right(s.eps) - contact_slope_identity(mm.params(), mm.shape(), J1, ev.rdot, Side::Right);
        worst = std::max({worst, std::abs(eL), std::abs(eR)});
      });
      err.push_back(worst);
    }
    char note[160];
    std::snprintf(note, sizeof note, "errors %.3e %.3e %.3e", err[0], err[1], err[2]);
    if (err[2] <= 1e-13) return Suite::Outcome{0.0, 1.8, true, std::string(note) + " (at roundoff)"};
    const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    return at_least(order, 1.8, note);
  });
  S.check(dmod, "decay fit recovers exp(-3t)", [&] {
    std::vector<double> t, v, w;
    for (int i = 0; i <= 200; ++i) {
      t.push_back(0.01 * i);
      v.push_back(std::exp(-3.0 * t.back()));
      w.push_back(v.back() * (1.0 + 0.01 * std::sin(t.back())));
    }
    const DecayFit a = fit_decay_rate(t, v), b = fit_decay_rate(t, w);
    Suite::Outcome o = at_most(std::abs(a.lambda - 3.0), 1e-6);
    o.pass = o.pass && std::abs(b.lambda - 3.0) <= 0.02;
    return o;
  });
  S.check(dmod, "energy of a flat profile g w h^2 / 2 + (sigma - gamma) w", [&] {
    const PhysicalParams& p = shape->params;
    const double h = 0.3, ell = 0.8;
    const auto& g = gauss01(8);
    std::vector<double> w, z, dz;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
      w.push_back(2 * ell * g.w[k]);
      z.push_back(h);
      dz.push_back(0.0);
    }
    const double E = energy_of_samples(w, z, dz, 1.0, ell, p);
    const double want = 0.5 * p.g * 2 * ell * h * h + (p.sigma - p.gamma_jump) * 2 * ell;
    return at_most(std::abs(E - want), 1e-13);
  });
  S.check(dmod, "energy bounded below by (sigma - gamma)(R - L) along the run", [&] {
    need_run();
    const PhysicalParams& p = shape->params;
    double worst = 1e300;
    for (const auto& row : pr.rows) worst = std::min(worst, row.E - (p.sigma - p.gamma_jump) * (row.R - row.L));
    return Suite::Outcome{worst, 0.0, worst > 0.0, "smallest margin"};
  });
  S.check(dmod, "weighted norm of 1 matches adaptive quadrature of the weight", [&] {
    const Mesh& m = model.mesh();
    const std::vector<double> one(m.n_nodes(), 1.0);
    const double delta = 0.4, ell = m.ell();
    const double got = weighted_norm(m, one, 0, delta);
    // int over the profile region of dist^(2 delta), dist to the nearer corner
    auto inner = [&](double x1) {
      const double top = shape->zeta0(x1);
      if (top <= 0.0) return 0.0;
      const double c = x1 < 0.0 ? -ell : ell;
      return integrate_adaptive(
          [&](double x2) { return std::pow(std::hypot(x1 - c, x2), 2.0 * delta); }, 0.0, top, 1e-13);
    };
    const double want = std::sqrt(integrate_adaptive(inner, -ell, 0.0, 1e-12) + integrate_adaptive(inner, 0.0, ell, 1e-12));
    return at_most(std::abs(got - want) / want, 1e-3, "isoparametric domain vs exact profile");
  });
}

void cli_checks(Suite& S, const RunConfig& cfg) {
  S.check("cli", "configuration round trip parse(serialize(c)) = c", [&] {
    const RunConfig back = parse_config(serialize_config(cfg));
    return Suite::Outcome{0.0, 0.0, back == cfg, ""};
  });
  S.check("cli", "gamma_jump >= sigma is rejected", [&] {
    bool rejected = false;
    try {
      parse_config("physics.gamma_jump = 1.5\n");
    } catch (const ValidationError&) {
      rejected = true;
    }
    return Suite::Outcome{0.0, 0.0, rejected, ""};
  });
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const RunConfig& cfg, const VerifyOptions& opt) {
  cfg.validate();
  Suite S;
  std::shared_ptr<const EquilibriumShape> shape;
  S.check("equilibrium", "solve", [&] {
    shape = std::make_shared<const EquilibriumShape>(solve_equilibrium(cfg.physical(), cfg.mass, 2048, cfg.quad_tol));
    return Suite::Outcome{shape->ell, 0.0, shape->ell > 0.0, "half-width"};
  });
  if (!shape) return S.out;
  equilibrium_checks(S, cfg, *shape);
  const DropletModel model(shape, opt.dynamics_n_surface, cfg.delta_grade, dynamics_options(cfg));
  geometry_checks(S, cfg, *shape, model);
  perturbation_checks(S);
  stokes_checks(S, model);
  dynamics_checks(S, cfg, shape, opt);
  cli_checks(S, cfg);
  return S.out;
}

std::string format_report(const std::vector<CheckResult>& checks) {
  std::string out;
  char buf[512];
  int passed = 0;
  for (const auto& c : checks) {
    passed += c.pass;
    std::snprintf(buf, sizeof buf, "%s  %-12s %s | value %.17g limit %.17g%s%s\n", c.pass ? "PASS" : "FAIL",
                  c.module.c_str(), c.name.c_str(), c.value, c.limit, c.note.empty() ? "" : " | ", c.note.c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%d of %zu checks passed\n", passed, checks.size());
  out += buf;
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace sessile
