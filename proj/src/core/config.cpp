#include "sessile/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sessile/errors.hpp"

namespace sessile {

const char* init_mode_name(InitMode m) {
  switch (m) {
    case InitMode::Equilibrium: return "equilibrium";
    case InitMode::SurfaceMode: return "surface_mode";
    case InitMode::EndpointShift: return "endpoint_shift";
  }
  return "equilibrium";
}

PhysicalParams RunConfig::physical() const {
  PhysicalParams p;
  p.mu = mu;
  p.g = g;
  p.sigma = sigma;
  p.gamma_jump = gamma_jump;
  p.beta = beta;
  p.response = response_kind == "sinh" ? ContactResponse::sinh(response_A, response_B)
                                       : ContactResponse::linear(kappa);
  return p;
}

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
  };
  need(mu > 0, "physics.mu must be positive");
  need(g > 0, "physics.g must be positive");
  need(sigma > 0, "physics.sigma must be positive");
  need(beta > 0, "physics.beta must be positive");
  need(response_kind == "linear" || response_kind == "sinh", "response.kind must be linear or sinh");
  if (response_kind == "linear") need(kappa > 0, "response.kappa must be positive");
  if (response_kind == "sinh") need(response_A > 0 && response_B > 0, "response.A and response.B must be positive");
  physical().validate();
  need(mass > 0, "drop.mass must be positive");
  need(n_surface >= 16 && n_surface % 2 == 0, "mesh.n_surface must be an even number >= 16");
  need(delta_grade >= 0 && delta_grade < 1, "mesh.delta_grade must lie in [0, 1)");
  need(dt > 0, "time.dt must be positive");
  need(t_end > dt, "time.t_end must exceed time.dt");
  need(init_k >= 1, "init.k must be >= 1");
  need(amplitude >= 0, "init.amplitude must be nonnegative");
  need(every >= 1, "output.every must be >= 1");
  need(picard_tol > 0, "numerics.picard_tol must be positive");
  need(picard_max >= 1, "numerics.picard_max must be >= 1");
  need(quad_tol > 0, "numerics.quad_tol must be positive");
  need(n_fft >= 16 && n_fft % 2 == 0, "numerics.n_fft must be an even number >= 16");
  need(contact_closure == "variational" || contact_closure == "pointwise",
       "numerics.contact_closure must be variational or pointwise");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, int line) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d))
    throw ParseError(line, "expected a number, got '" + v + "'");
  return d;
}

int to_int(const std::string& v, int line) {
  errno = 0;
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE || d < -1000000000L || d > 1000000000L)
    throw ParseError(line, "expected an integer, got '" + v + "'");
  return int(d);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'section.key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty()) throw ParseError(line, "missing value for '" + key + "'");
    if (key == "physics.mu") c.mu = to_double(val, line);
    else if (key == "physics.g") c.g = to_double(val, line);
    else if (key == "physics.sigma") c.sigma = to_double(val, line);
    else if (key == "physics.gamma_jump") c.gamma_jump = to_double(val, line);
    else if (key == "physics.beta") c.beta = to_double(val, line);
    else if (key == "response.kind") {
      if (val != "linear" && val != "sinh") throw ParseError(line, "response.kind must be linear or sinh");
      c.response_kind = val;
    } else if (key == "response.kappa") c.kappa = to_double(val, line);
    else if (key == "response.A") c.response_A = to_double(val, line);
    else if (key == "response.B") c.response_B = to_double(val, line);
    else if (key == "drop.mass") c.mass = to_double(val, line);
    else if (key == "mesh.n_surface") c.n_surface = to_int(val, line);
    else if (key == "mesh.delta_grade") c.delta_grade = to_double(val, line);
    else if (key == "time.dt") c.dt = to_double(val, line);
    else if (key == "time.t_end") c.t_end = to_double(val, line);
    else if (key == "init.mode") {
      std::istringstream vs(val);
      std::string mode, extra;
      vs >> mode;
      if (mode == "equilibrium") c.init_mode = InitMode::Equilibrium;
      else if (mode == "surface_mode") c.init_mode = InitMode::SurfaceMode;
      else if (mode == "endpoint_shift") c.init_mode = InitMode::EndpointShift;
      else throw ParseError(line, "init.mode must be equilibrium, surface_mode or endpoint_shift");
      if (vs >> extra) {
        if (c.init_mode != InitMode::SurfaceMode) throw ParseError(line, "unexpected text after init.mode");
        c.init_k = to_int(extra, line);
        if (vs >> extra) throw ParseError(line, "unexpected text after init.mode");
      }
    } else if (key == "init.k") c.init_k = to_int(val, line);
    else if (key == "init.amplitude") c.amplitude = to_double(val, line);
    else if (key == "output.dir") c.out_dir = val;
    else if (key == "output.every") c.every = to_int(val, line);
    else if (key == "numerics.picard_tol") c.picard_tol = to_double(val, line);
    else if (key == "numerics.picard_max") c.picard_max = to_int(val, line);
    else if (key == "numerics.quad_tol") c.quad_tol = to_double(val, line);
    else if (key == "numerics.n_fft") c.n_fft = to_int(val, line);
    else if (key == "numerics.contact_closure") {
      if (val != "variational" && val != "pointwise")
        throw ParseError(line, "numerics.contact_closure must be variational or pointwise");
      c.contact_closure = val;
    }
    else throw ParseError(line, "unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  char buf[128];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  auto integer = [&](const char* key, int v) {
    std::snprintf(buf, sizeof buf, "%s = %d\n", key, v);
    out += buf;
  };
  auto text = [&](const char* key, const std::string& v) { out += std::string(key) + " = " + v + "\n"; };
  num("physics.mu", c.mu);
  num("physics.g", c.g);
  num("physics.sigma", c.sigma);
  num("physics.gamma_jump", c.gamma_jump);
  num("physics.beta", c.beta);
  text("response.kind", c.response_kind);
  num("response.kappa", c.kappa);
  num("response.A", c.response_A);
  num("response.B", c.response_B);
  num("drop.mass", c.mass);
  integer("mesh.n_surface", c.n_surface);
  num("mesh.delta_grade", c.delta_grade);
  num("time.dt", c.dt);
  num("time.t_end", c.t_end);
  text("init.mode", init_mode_name(c.init_mode));
  integer("init.k", c.init_k);
  num("init.amplitude", c.amplitude);
  text("output.dir", c.out_dir);
  integer("output.every", c.every);
  num("numerics.picard_tol", c.picard_tol);
  integer("numerics.picard_max", c.picard_max);
  num("numerics.quad_tol", c.quad_tol);
  integer("numerics.n_fft", c.n_fft);
  text("numerics.contact_closure", c.contact_closure);
  return out;
}

}  // namespace sessile
