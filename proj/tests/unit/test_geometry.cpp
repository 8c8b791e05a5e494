#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "sessile/errors.hpp"
#include "sessile/geometry.hpp"

using namespace sessile;
using testing::uniform;

namespace {

double sines(const std::vector<double>& a, double ell, double x) {
  double v = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::sin(double(k + 1) * M_PI * (x + ell) / (2.0 * ell));
  return v;
}

std::vector<GeomPoint> interior_points(const EquilibriumShape& sh, int n) {
  std::vector<GeomPoint> pts;
  for (int k = 0; k < n; ++k) {
    const double x1 = 0.995 * sh.ell * uniform(-1.0, 1.0);
    pts.push_back(make_geom_point(sh, x1, sh.zeta0(x1) * uniform(0.0, 1.0)));
  }
  return pts;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("smooth step is monotone with flat ends") {
    CHECK(smooth_step(-0.5) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double v = smooth_step(i / 100.0);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(smooth_step(1e-3) < 1e-300);
  }

  TEST_CASE("extension agrees inside, is continuous at the ends and has compact support") {
    const double ell = 1.3;
    auto f = [&](double x) { return 0.1 * std::sin(M_PI * (x + ell) / (2.0 * ell)) + 0.02 * std::sin(3.0 * M_PI * (x + ell) / (2.0 * ell)); };
    const SurfaceExtension e(ell, f, EndpointJets{});
    for (int i = 0; i <= 20; ++i) {
      const double x = -ell + 2.0 * ell * i / 20.0;
      CHECK(e(x) == f(x));
    }
    for (double side : {-1.0, 1.0}) {
      const double x = side * ell;
      CHECK(std::abs(e(x + side * 1e-9) - e(x)) < 1e-9);
      // first derivative continuous across the end point
      const double din = (e(x) - e(x - side * 1e-6)) / 1e-6 * side;
      const double dout = (e(x + side * 1e-6) - e(x)) / 1e-6 * side;
      CHECK(std::abs(din - dout) < 1e-5);
    }
    CHECK(e(2.75 * ell) == 0.0);
    CHECK(e(-3.0 * ell) == 0.0);
  }

  TEST_CASE("Poisson extension damps each Fourier mode by exp(-2 pi xi z2)") {
    const double ell = 1.0, per = 8.0 * ell;
    for (int k : {1, 2, 5, 11}) {
      const double xi = k / per;
      const PoissonExtension P(ell, 4096, [&](double x) { return std::cos(2.0 * M_PI * xi * x); });
      for (double z2 : {0.0, 0.2, 0.7}) {
        const double z1 = uniform(-ell, ell);
        const auto v = P.eval(z1, z2);
        const double d = std::exp(-2.0 * M_PI * xi * z2);
        CHECK(std::abs(v.p - d * std::cos(2.0 * M_PI * xi * z1)) < 1e-12);
        CHECK(std::abs(v.p1 + 2.0 * M_PI * xi * d * std::sin(2.0 * M_PI * xi * z1)) < 1e-11);
        CHECK(std::abs(v.p2 + 2.0 * M_PI * xi * d * std::cos(2.0 * M_PI * xi * z1)) < 1e-11);
      }
    }
  }

  TEST_CASE("property: the harmonic extension has trace eps on the free surface") {
    const auto sh = testing::default_shape();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> a(5);
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = 0.02 * uniform(-1.0, 1.0) / double(k + 1);
      auto f = [&](double x) { return sines(a, sh->ell, x); };
      const SurfaceExtension ext(sh->ell, f, EndpointJets{});
      const PoissonExtension P(sh->ell, 4096, [&](double x) { return ext(x); });
      double worst = 0.0;
      for (int i = 0; i <= 60; ++i) {
        const double x = -sh->ell + 2.0 * sh->ell * i / 60.0;
        worst = std::max(worst, std::abs(harmonic_extension(P, make_geom_point(*sh, x, sh->zeta0(x))).eta - f(x)));
      }
      CHECK(worst < 1e-8);
    }
  }

  TEST_CASE("width factors") {
    const double ell = 1.2;
    CHECK(J1_of(0.0, 0.0, ell) == 1.0);
    CHECK(k1(0.0, 0.0, ell) == 0.0);
    for (int i = 0; i < 20; ++i) {
      const double l = uniform(-0.3, 0.3), r = uniform(-0.3, 0.3);
      CHECK(J1_of(l, r, ell) * (1.0 + k1(l, r, ell)) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(J1_of(1.2, -1.2, ell), DegenerateWidthError);
    CHECK_THROWS_AS(k1(1.2, -1.2, ell), DegenerateWidthError);
  }

  TEST_CASE("property: the remainder O equals a - a_tilde and is quadratic") {
    const double ell = 1.1;
    for (int i = 0; i < 50; ++i) {
      const double l = uniform(-0.2, 0.2), r = uniform(-0.2, 0.2), ld = uniform(-1, 1), rd = uniform(-1, 1);
      const double x = uniform(-ell, ell);
      const auto d = dilation_fields(l, r, ld, rd, ell, x);
      CHECK(std::abs(d.O - (d.a - d.a_tilde)) < 1e-14);
      const auto h = dilation_fields(0.5 * l, 0.5 * r, 0.5 * ld, 0.5 * rd, ell, x);
      if (std::abs(d.O) > 1e-10) CHECK(h.O / d.O == doctest::Approx(0.25).epsilon(0.1));
    }
    // a_tilde interpolates the end point rates
    const auto L = dilation_fields(0.0, 0.0, 0.3, -0.7, ell, -ell);
    const auto R = dilation_fields(0.0, 0.0, 0.3, -0.7, ell, ell);
    CHECK(L.a_tilde == doctest::Approx(0.3));
    CHECK(R.a_tilde == doctest::Approx(-0.7));
  }

  TEST_CASE("property: J1 K1 = 1 and det(script A) = K on random maps") {
    const auto sh = testing::default_shape();
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> a(4);
      for (auto& v : a) v = 0.03 * uniform(-1, 1);
      auto f = [&](double x) { return sines(a, sh->ell, x); };
      const SurfaceExtension ext(sh->ell, f, EndpointJets{});
      const PoissonExtension P(sh->ell, 2048, [&](double x) { return ext(x); });
      const auto mc = mapping_coefficients(*sh, P, uniform(-0.05, 0.05), uniform(-0.05, 0.05), interior_points(*sh, 80), {});
      for (const auto& c : mc.c) {
        CHECK(std::abs(c.J1 * c.K1 - 1.0) < 1e-12);
        CHECK(std::abs(c.J2 * c.K2 - 1.0) < 1e-12);
        CHECK(std::abs(c.det() - c.K) < 1e-12);
        CHECK(std::abs(c.J * c.K - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("zero perturbation gives the identity map") {
    const auto sh = testing::default_shape();
    const PoissonExtension P(sh->ell, 1024, [](double) { return 0.0; });
    const auto mc = mapping_coefficients(*sh, P, 0.0, 0.0, interior_points(*sh, 60), {});
    for (const auto& c : mc.c) {
      CHECK(c.J == 1.0);
      CHECK(c.A == 0.0);
      CHECK(c.a11 == 1.0);
      CHECK(c.a12 == 0.0);
      CHECK(c.a22 == 1.0);
    }
    CHECK(check_diffeomorphism(mc).ok);
  }

  TEST_CASE("validity check names the violated bound") {
    MapCoef good;
    std::vector<MapCoef> c{good, good};
    CHECK(check_diffeomorphism(c).ok);
    c[1].J = 1.6;
    auto rep = check_diffeomorphism(c);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_point == 1);
    CHECK(rep.reason.find("J - 1") != std::string::npos);
    c[1].J = -0.1;
    CHECK(check_diffeomorphism(c).reason.find("not positive") != std::string::npos);
    c[1].J = 1.0;
    c[1].A = 0.7;
    CHECK(check_diffeomorphism(c).reason.find("|A|") != std::string::npos);
  }

  TEST_CASE("mode-2 validity is monotone in amplitude") {
    const auto& m = testing::coarse_model();
    bool prev = true, monotone = true, failed = false;
    for (int i = 1; i <= 40; ++i) {
      const bool ok = m.map_validity(m.map_field(m.initial_state(InitMode::SurfaceMode, 2, 0.015 * i))).ok;
      if (ok && !prev) monotone = false;
      failed = failed || !ok;
      prev = ok;
    }
    CHECK(monotone);
    CHECK(failed);
  }
}
