#include "sessile/sessile.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "sessile/config.hpp"
#include "sessile/dynamics.hpp"
#include "sessile/equilibrium.hpp"
#include "sessile/errors.hpp"
#include "sessile/output.hpp"
#include "sessile/verify.hpp"

struct sessile_config {
  sessile::RunConfig cfg;
};

struct sessile_equilibrium {
  sessile::RunConfig cfg;
  sessile::EquilibriumShape shape;
};

struct sessile_run {
  sessile::RunResult result;
  int n_snapshots = 0;
};

namespace {

thread_local std::string g_last_error;

sessile_status set_error(sessile_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

sessile_status status_of(sessile::ErrorKind k) {
  using sessile::ErrorKind;
  switch (k) {
    case ErrorKind::Parse: return SESSILE_ERR_PARSE;
    case ErrorKind::Validation: return SESSILE_ERR_VALIDATION;
    case ErrorKind::Io: return SESSILE_ERR_IO;
    case ErrorKind::Domain:
    case ErrorKind::DegenerateWidth: return SESSILE_ERR_DOMAIN;
    case ErrorKind::Convergence:
    case ErrorKind::Fit: return SESSILE_ERR_CONVERGENCE;
    case ErrorKind::Mesh:
    case ErrorKind::Assembly:
    case ErrorKind::SingularSystem: return SESSILE_ERR_NUMERIC;
    case ErrorKind::Step: return SESSILE_ERR_STEP;
  }
  return SESSILE_ERR_INTERNAL;
}

template <class F>
sessile_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SESSILE_OK;
  } catch (const sessile::ParseError& e) {
    return set_error(SESSILE_ERR_PARSE, "line " + std::to_string(e.line()) + ": " + e.what());
  } catch (const sessile::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SESSILE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SESSILE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(SESSILE_ERR_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

sessile::EquilibriumShape solve_shape(const sessile::RunConfig& cfg) {
  return sessile::solve_equilibrium(cfg.physical(), cfg.mass, 2048, cfg.quad_tol);
}

std::string field_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "field_%d.csv", step);
  return buf;
}

}  // namespace

extern "C" {

const char* sessile_last_error(void) { return g_last_error.c_str(); }

const char* sessile_status_name(sessile_status s) {
  switch (s) {
    case SESSILE_OK: return "ok";
    case SESSILE_ERR_ARGUMENT: return "invalid argument";
    case SESSILE_ERR_PARSE: return "parse error";
    case SESSILE_ERR_VALIDATION: return "validation error";
    case SESSILE_ERR_DIFFEOMORPHISM: return "invalid initial state";
    case SESSILE_ERR_IO: return "i/o error";
    case SESSILE_ERR_DOMAIN: return "domain error";
    case SESSILE_ERR_CONVERGENCE: return "convergence failure";
    case SESSILE_ERR_NUMERIC: return "numerical failure";
    case SESSILE_ERR_STEP: return "step rejected";
    case SESSILE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sessile_string_free(char* s) { std::free(s); }

sessile_status sessile_config_default(sessile_config** out) {
  if (!out) return set_error(SESSILE_ERR_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new sessile_config{}; });
}

sessile_status sessile_config_parse(const char* text, sessile_config** out) {
  if (!text || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto c = std::make_unique<sessile_config>();
    c->cfg = sessile::parse_config(text);
    *out = c.release();
  });
}

sessile_status sessile_config_load(const char* path, sessile_config** out) {
  if (!path || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto c = std::make_unique<sessile_config>();
    c->cfg = sessile::load_config(path);
    *out = c.release();
  });
}

sessile_status sessile_config_set(sessile_config* c, const char* key, const char* value) {
  if (!c || !key || !value) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  if (std::strpbrk(key, "\n#=") || std::strpbrk(value, "\n#"))
    return set_error(SESSILE_ERR_ARGUMENT, "key or value contains a reserved character");
  return guarded([&] {
    const std::string text =
        sessile::serialize_config(c->cfg) + "\n" + key + " = " + value + "\n";
    c->cfg = sessile::parse_config(text);
  });
}

sessile_status sessile_config_serialize(const sessile_config* c, char** out) {
  if (!c || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(sessile::serialize_config(c->cfg)); });
}

const char* sessile_config_out_dir(const sessile_config* c) { return c ? c->cfg.out_dir.c_str() : ""; }

void sessile_config_free(sessile_config* c) { delete c; }

sessile_status sessile_equilibrium_solve(const sessile_config* c, sessile_equilibrium** out) {
  if (!c || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    c->cfg.validate();
    *out = new sessile_equilibrium{c->cfg, solve_shape(c->cfg)};
  });
}

sessile_status sessile_equilibrium_info_get(const sessile_equilibrium* e, sessile_equilibrium_info* out) {
  if (!e || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  const auto& s = e->shape;
  out->ell = s.ell;
  out->P0 = s.P0;
  out->psi0 = s.psi0;
  out->apex = s.apex;
  out->mass_check = std::abs(s.mass_quadrature() - s.mass) / s.mass;
  return SESSILE_OK;
}

sessile_status sessile_equilibrium_eval(const sessile_equilibrium* e, double x1, double out[3]) {
  if (!e || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  if (!(x1 >= -e->shape.ell && x1 <= e->shape.ell))
    return set_error(SESSILE_ERR_DOMAIN, "x1 outside the droplet base");
  const auto v = e->shape.eval(x1);
  out[0] = v.z;
  out[1] = v.dz;
  out[2] = v.d2z;
  return SESSILE_OK;
}

sessile_status sessile_equilibrium_write(const sessile_equilibrium* e, const char* dir) {
  if (!e || !dir) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string eq = sessile::equilibrium_csv(e->shape);
    const std::string sum = sessile::summary_csv(e->shape);
    const std::string conf = sessile::serialize_config(e->cfg);
    sessile::ensure_directory(dir);
    sessile::write_file(sessile::join_path(dir, "resolved_config.txt"), conf);
    sessile::write_file(sessile::join_path(dir, "equilibrium.csv"), eq);
    sessile::write_file(sessile::join_path(dir, "summary.csv"), sum);
  });
}

void sessile_equilibrium_free(sessile_equilibrium* e) { delete e; }

sessile_status sessile_simulate(const sessile_config* c, const char* dir, sessile_run** out) {
  if (!c || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  bool initial_checked = false;
  const sessile_status st = guarded([&] {
    const sessile::RunConfig& cfg = c->cfg;
    cfg.validate();
    auto shape = std::make_shared<const sessile::EquilibriumShape>(solve_shape(cfg));
    const sessile::DropletModel model(shape, cfg.n_surface, cfg.delta_grade, sessile::dynamics_options(cfg));
    const sessile::SurfaceState s0 = model.initial_state(cfg.init_mode, cfg.init_k, cfg.amplitude);
    model.check_state(s0);
    initial_checked = true;

    auto run = std::make_unique<sessile_run>();
    std::string out_dir;
    if (dir) {
      out_dir = dir;
      sessile::ensure_directory(out_dir);
      sessile::write_file(sessile::join_path(out_dir, "resolved_config.txt"), sessile::serialize_config(cfg));
    }
    sessile_run* r = run.get();
    const sessile::SnapshotFn snap = [&](int step, const sessile::DropletModel& m, const sessile::SurfaceState&,
                                         const sessile::Evaluation& ev) {
      ++r->n_snapshots;
      if (!out_dir.empty())
        sessile::write_file(sessile::join_path(out_dir, field_name(step)), sessile::field_csv(m.mesh(), ev.flow));
    };
    run->result = sessile::run_from(model, s0, cfg, snap);
    if (!out_dir.empty())
      sessile::write_file(sessile::join_path(out_dir, "timeseries.csv"), sessile::timeseries_csv(run->result.rows));
    *out = run.release();
  });
  if (st == SESSILE_ERR_STEP && !initial_checked) return SESSILE_ERR_DIFFEOMORPHISM;
  return st;
}

sessile_status sessile_run_info_get(const sessile_run* r, sessile_run_info* out) {
  if (!r || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  out->n_rows = r->result.rows.size();
  out->com_drift = r->result.com_drift;
  out->max_mass_correction = r->result.max_mass_correction;
  out->total_halvings = r->result.total_halvings;
  out->n_snapshots = r->n_snapshots;
  return SESSILE_OK;
}

sessile_status sessile_run_row(const sessile_run* r, size_t i, sessile_row* out) {
  if (!r || !out) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  if (i >= r->result.rows.size()) return set_error(SESSILE_ERR_ARGUMENT, "row index out of range");
  const auto& w = r->result.rows[i];
  *out = sessile_row{w.t, w.E, w.dE, w.D, w.residual, w.M, w.L, w.R, w.theta_L, w.theta_R, w.X1, w.X2,
                     w.trace_mismatch, w.contact_law_residual, w.h1_proxy, w.mass_correction, w.picard_iters};
  return SESSILE_OK;
}

void sessile_run_free(sessile_run* r) { delete r; }

sessile_status sessile_verify(const sessile_config* c, const char* dir, int* all_passed, char** report) {
  if (!c || !all_passed) return set_error(SESSILE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    c->cfg.validate();
    const auto checks = sessile::run_invariant_suite(c->cfg);
    const std::string text = sessile::format_report(checks);
    if (dir) {
      sessile::ensure_directory(dir);
      sessile::write_file(sessile::join_path(dir, "verify_report.txt"), text);
    }
    *all_passed = sessile::all_passed(checks) ? 1 : 0;
    if (report) *report = dup_string(text);
  });
}

}  // extern "C"
