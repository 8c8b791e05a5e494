#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "sessile/dynamics.hpp"
#include "sessile/errors.hpp"

using namespace sessile;
using testing::uniform;

TEST_SUITE("dynamics") {
  TEST_CASE("contact response is an increasing bijection") {
    for (const auto& R : {ContactResponse::linear(2.0), ContactResponse::sinh(0.5, 3.0)}) {
      double prev = -1e300;
      for (int i = -20; i <= 20; ++i) {
        const double z = 0.05 * i;
        CHECK(R.W(R.V(z)) == doctest::Approx(z).scale(1.0).epsilon(1e-12));
        CHECK(R.V(z) > prev);
        CHECK(R.dV(z) > 0.0);
        prev = R.V(z);
      }
      CHECK(R.V(0.0) == 0.0);
    }
    CHECK(ContactResponse::linear(2.0).W(0.3) == doctest::Approx(0.6));
  }

  TEST_CASE("contact points advance when the slope is steeper than Young's") {
    PhysicalParams p;
    const double s = endpoint_slope(p);
    CHECK(contact_velocity(p, s, Side::Left) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(contact_velocity(p, s, Side::Right) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    // steeper: the left point moves left, the right point moves right
    CHECK(contact_velocity(p, 1.5 * s, Side::Left) < 0.0);
    CHECK(contact_velocity(p, 1.5 * s, Side::Right) > 0.0);
    CHECK(contact_velocity(p, 0.5 * s, Side::Left) > 0.0);
  }

  TEST_CASE("property: the slope identity inverts the contact law") {
    const auto sh = testing::default_shape();
    const PhysicalParams& p = sh->params;
    for (int i = 0; i < 20; ++i) {
      const double de = uniform(-0.3, 0.3), J1 = uniform(0.95, 1.05);
      const double phys = (sh->eval(-sh->ell).dz + de) / J1;
      const double rate = contact_velocity(p, phys, Side::Left);
      CHECK(contact_slope_identity(p, *sh, J1, rate, Side::Left) == doctest::Approx(de).scale(1.0).epsilon(1e-12));
      const double physR = (sh->eval(sh->ell).dz + de) / J1;
      const double rateR = contact_velocity(p, physR, Side::Right);
      CHECK(contact_slope_identity(p, *sh, J1, rateR, Side::Right) == doctest::Approx(de).scale(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("equilibrium is stationary") {
    const auto& m = testing::coarse_model();
    const Evaluation ev = m.evaluate(m.equilibrium_state());
    double rate = 0.0;
    for (double v : ev.eps_dot) rate = std::max(rate, std::abs(v));
    CHECK(rate < 1e-9);
    CHECK(std::abs(ev.ldot) < 1e-9);
    CHECK(std::abs(ev.rdot) < 1e-9);
    CHECK(ev.D.total() < 1e-16);
    CHECK(m.energy(m.equilibrium_state()) == doctest::Approx(m.equilibrium_energy()));
  }

  TEST_CASE("perturbation raises the energy above equilibrium") {
    const auto& m = testing::coarse_model();
    for (int k : {1, 2, 3}) CHECK(m.energy(m.initial_state(InitMode::SurfaceMode, k, 0.02)) > m.equilibrium_energy());
  }

  TEST_CASE("mass renormalization restores the target") {
    const auto& m = testing::coarse_model();
    SurfaceState s = m.initial_state(InitMode::SurfaceMode, 1, 0.03);
    const double c = m.renormalize_mass(s, m.shape().mass);
    CHECK(c > 0.0);
    CHECK(m.mass(s) == doctest::Approx(m.shape().mass).epsilon(1e-14));
    CHECK(m.renormalize_mass(s, m.shape().mass) < 1e-14);
  }

  TEST_CASE("a step keeps mass and lowers the energy") {
    const auto& m = testing::coarse_model();
    SurfaceState s = m.initial_state(InitMode::SurfaceMode, 2, 0.02);
    m.renormalize_mass(s, m.shape().mass);
    const Evaluation ev = m.evaluate(s);
    const StepOutcome out = advance(m, s, ev, 1e-3, m.shape().mass);
    CHECK(std::abs(m.mass(out.state) - m.shape().mass) < 1e-12);
    CHECK(m.energy(out.state) < m.energy(s));
    CHECK(out.eval.D.total() > 0.0);
  }

  TEST_CASE("an even perturbation gives mirror symmetric rates") {
    const auto& m = testing::coarse_model();
    const Evaluation ev = m.evaluate(m.initial_state(InitMode::SurfaceMode, 3, 0.02));
    CHECK(ev.ldot == doctest::Approx(-ev.rdot).epsilon(1e-10));
    const std::size_t n = ev.eps_dot.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ev.eps_dot[i] - ev.eps_dot[n - 1 - i]) < 1e-10);
  }

  TEST_CASE("variational closure satisfies the energy identity to solver precision") {
    const auto& m = testing::coarse_model();
    const SurfaceState s = m.initial_state(InitMode::SurfaceMode, 2, 0.02);
    const Evaluation ev = m.evaluate(s);
    // d/dt E along the rates from a centered difference of the state
    const double h = 1e-6;
    auto shifted = [&](double t) {
      SurfaceState q = s;
      for (std::size_t i = 0; i < q.eps.size(); ++i) q.eps[i] += t * ev.eps_dot[i];
      q.l += t * ev.ldot;
      q.r += t * ev.rdot;
      return m.energy(q);
    };
    const double dE = (shifted(h) - shifted(-h)) / (2.0 * h);
    CHECK(std::abs(dE + ev.D.total()) < 1e-6 * ev.D.total());
  }

  TEST_CASE("invalid states are rejected") {
    const auto& m = testing::coarse_model();
    SurfaceState s = m.initial_state(InitMode::SurfaceMode, 2, 0.6);
    CHECK_THROWS_AS(m.check_state(s), StepError);
    s = m.equilibrium_state();
    s.eps[3] = std::nan("");
    CHECK_THROWS_AS(m.check_state(s), StepError);
    s = m.equilibrium_state();
    s.eps.pop_back();
    CHECK_THROWS_AS(m.check_state(s), StepError);
  }

  TEST_CASE("run rows carry consistent diagnostics") {
    RunConfig c;
    c.n_surface = 16;
    c.dt = 2e-3;
    c.t_end = 0.02;
    c.init_mode = InitMode::SurfaceMode;
    c.amplitude = 0.02;
    const RunResult r = run(testing::coarse_model(), c);
    REQUIRE(r.rows.size() == 11);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].t == doctest::Approx(0.002 * i));
      CHECK(r.rows[i].D >= 0.0);
      CHECK(r.rows[i].dE > 0.0);
      if (i) CHECK(r.rows[i].dE <= r.rows[i - 1].dE);
    }
    CHECK(r.total_halvings == 0);
  }
}
