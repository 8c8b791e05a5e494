#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracles/shooting_oracle.hpp"
#include "sessile/equilibrium.hpp"
#include "sessile/errors.hpp"

using namespace sessile;
using testing::uniform;

TEST_SUITE("equilibrium") {
  TEST_CASE("Young angle and end point slope") {
    PhysicalParams p;
    p.sigma = 1.5;
    p.gamma_jump = 0.9;
    CHECK(std::cos(young_angle(p)) == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK(endpoint_slope(p) == doctest::Approx(std::sqrt(1.5 * 1.5 - 0.81) / 0.9).epsilon(1e-15));
    CHECK(std::tan(contact_inclination(p)) == doctest::Approx(endpoint_slope(p)).epsilon(1e-14));
  }

  TEST_CASE("default droplet matches the frozen shooting values") {
    // frozen from the shooting oracle with g = sigma = M = 1, gamma = 0.6
    const auto s = testing::default_shape();
    CHECK(std::abs(s->ell - 1.2887812311488736) < 1e-10);
    CHECK(std::abs(s->P0 - 1.0087049443148122) < 1e-10);
    CHECK(std::abs(s->apex - 0.54235136098436509) < 1e-10);
    const auto o = oracle::solve({1.0, 1.0, 0.6, 1.0});
    CHECK(std::abs(o.ell - 1.2887812311488736) < 1e-10);
    CHECK(std::abs(o.P0 - 1.0087049443148122) < 1e-10);
    CHECK(std::abs(o.h - 0.54235136098436509) < 1e-10);
  }

  TEST_CASE("pressure closes the mass balance") {
    const auto s = testing::default_shape();
    const PhysicalParams& p = s->params;
    CHECK(s->P0 == doctest::Approx(equilibrium_pressure(p, 1.0, s->ell)).epsilon(1e-15));
    CHECK(std::abs(width_residual(p, 1.0, s->ell)) < 1e-12);
    CHECK(s->ell < width_ell_max(p, 1.0));
    CHECK(width_residual_dell(p, 1.0, s->ell) > 0.0);
  }

  TEST_CASE("property: random droplets are symmetric, conserve mass and match the oracle") {
    for (int trial = 0; trial < 6; ++trial) {
      PhysicalParams p;
      p.g = uniform(0.5, 2.0);
      p.sigma = uniform(0.5, 2.0);
      p.gamma_jump = uniform(0.2, 0.95) * p.sigma;
      const double M = uniform(0.5, 2.0);
      const auto s = solve_equilibrium(p, M);
      CAPTURE(trial);
      CHECK(std::abs(s.mass_quadrature() - M) / M < 1e-10);
      CHECK(std::abs(s.dz.front() - endpoint_slope(p)) < 1e-10);
      CHECK(std::abs(s.dz.back() + endpoint_slope(p)) < 1e-10);
      CHECK(young_laplace_residual(s) < 1e-7);
      CHECK(slope_consistency(s) < 1e-8);
      double asym = 0.0;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const std::size_t j = s.x.size() - 1 - i;
        asym = std::max({asym, std::abs(s.z[i] - s.z[j]), std::abs(s.dz[i] + s.dz[j])});
      }
      CHECK(asym == 0.0);
      const auto o = oracle::solve({p.g, p.sigma, p.gamma_jump, M});
      double gap = 0.0;
      for (std::size_t i = 0; i < o.x.size(); ++i) gap = std::max(gap, std::abs(s.zeta0(std::min(o.x[i], s.ell)) - o.z[i]));
      CHECK(gap < 1e-8);
    }
  }

  TEST_CASE("profile is positive inside and vanishes at the contact points") {
    const auto s = testing::default_shape();
    CHECK(s->zeta0(-s->ell) == 0.0);
    CHECK(s->zeta0(s->ell) == 0.0);
    for (int i = 1; i < 50; ++i) CHECK(s->zeta0(-s->ell + 2.0 * s->ell * i / 50.0) > 0.0);
    CHECK(s->eval(0.0).dz == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(s->eval(0.0).d2z < 0.0);
  }

  TEST_CASE("invalid input is rejected") {
    PhysicalParams p;
    p.gamma_jump = 1.0;
    CHECK_THROWS_AS(solve_equilibrium(p, 1.0), ValidationError);
    p.gamma_jump = 0.6;
    CHECK_THROWS_AS(solve_equilibrium(p, -1.0), ValidationError);
    CHECK_THROWS_AS(solve_equilibrium(p, 1.0, 15), ValidationError);
    CHECK_THROWS_AS(testing::default_shape()->eval(2.0), DomainError);
  }
}
