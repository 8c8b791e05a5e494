#pragma once

#include <memory>
#include <random>

#include "sessile/config.hpp"
#include "sessile/dynamics.hpp"
#include "sessile/equilibrium.hpp"

namespace testing {

inline std::shared_ptr<const sessile::EquilibriumShape> default_shape() {
  static const auto s = std::make_shared<const sessile::EquilibriumShape>(
      sessile::solve_equilibrium(sessile::RunConfig{}.physical(), 1.0));
  return s;
}

// Coarse model shared by the tests (16 surface elements).
inline const sessile::DropletModel& coarse_model() {
  static const sessile::DropletModel m(default_shape(), 16, 0.3);
  return m;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20261015);
  return r;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

}  // namespace testing
