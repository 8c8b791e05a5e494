#pragma once

#include <string>

#include "sessile/params.hpp"

namespace sessile {

enum class InitMode { Equilibrium, SurfaceMode, EndpointShift };

struct RunConfig {
  double mu = 1.0, g = 1.0, sigma = 1.0, gamma_jump = 0.6, beta = 1.0;
  std::string response_kind = "linear";  // linear | sinh
  double kappa = 1.0;
  double response_A = 1.0, response_B = 1.0;
  double mass = 1.0;
  int n_surface = 64;
  double delta_grade = 0.3;
  double dt = 1e-3;
  double t_end = 1.0;
  InitMode init_mode = InitMode::Equilibrium;
  int init_k = 2;
  double amplitude = 0.0;
  std::string out_dir = "out";
  int every = 100;
  double picard_tol = 1e-10;
  int picard_max = 10;
  double quad_tol = 1e-12;
  int n_fft = 4096;
  std::string contact_closure = "variational";  // variational | pointwise

  PhysicalParams physical() const;
  // Throws ValidationError naming the violated constraint.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

// Line-oriented "section.key = value" text with '#' comments. Omitted keys keep
// their defaults. Throws ParseError (with line number) or ValidationError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Every key, floating values with 17 significant digits.
std::string serialize_config(const RunConfig& c);

const char* init_mode_name(InitMode m);

}  // namespace sessile
