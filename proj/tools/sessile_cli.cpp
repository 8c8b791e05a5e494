#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "sessile/sessile.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

int fail(sessile_status s) {
  std::fprintf(stderr, "error: %s: %s\n", sessile_status_name(s), sessile_last_error());
  return s == SESSILE_ERR_PARSE || s == SESSILE_ERR_ARGUMENT ? kExitUsage : kExitRuntime;
}

int run_equilibrium(const sessile_config* cfg, const char* dir) {
  sessile_equilibrium* eq = nullptr;
  sessile_status s = sessile_equilibrium_solve(cfg, &eq);
  if (s != SESSILE_OK) return fail(s);
  sessile_equilibrium_info info{};
  sessile_equilibrium_info_get(eq, &info);
  s = sessile_equilibrium_write(eq, dir);
  sessile_equilibrium_free(eq);
  if (s != SESSILE_OK) return fail(s);
  std::printf("ell %.17g  P0 %.17g  psi0 %.17g  apex %.17g  mass_check %.3e\n", info.ell, info.P0, info.psi0,
              info.apex, info.mass_check);
  return kExitOk;
}

int run_simulate(const sessile_config* cfg, const char* dir) {
  sessile_run* run = nullptr;
  const sessile_status s = sessile_simulate(cfg, dir, &run);
  if (s != SESSILE_OK) return fail(s);
  sessile_run_info info{};
  sessile_run_info_get(run, &info);
  sessile_row last{};
  sessile_run_row(run, info.n_rows - 1, &last);
  sessile_run_free(run);
  std::printf("steps %zu  t %.6g  E %.17g  snapshots %d  halvings %d  com_drift %.3e  max_mass_correction %.3e\n",
              info.n_rows - 1, last.t, last.E, info.n_snapshots, info.total_halvings, info.com_drift,
              info.max_mass_correction);
  return kExitOk;
}

int run_verify(const sessile_config* cfg, const char* dir) {
  int ok = 0;
  char* report = nullptr;
  const sessile_status s = sessile_verify(cfg, dir, &ok, &report);
  if (s != SESSILE_OK) return fail(s);
  std::fputs(report, stdout);
  sessile_string_free(report);
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sessile droplet relaxation"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    return sub;
  };
  CLI::App* eq = add("equilibrium", "solve the static shape and write its profile");
  CLI::App* sim = add("simulate", "integrate the relaxation from the configured initial state");
  CLI::App* ver = add("verify", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  sessile_config* cfg = nullptr;
  sessile_status s = sessile_config_load(config_path.c_str(), &cfg);
  if (s != SESSILE_OK) {
    // an unreadable config file is a usage error
    const int code = fail(s);
    return s == SESSILE_ERR_IO ? kExitUsage : code;
  }
  if (!out_dir.empty()) {
    s = sessile_config_set(cfg, "output.dir", out_dir.c_str());
    if (s != SESSILE_OK) {
      sessile_config_free(cfg);
      return fail(s);
    }
  }
  const std::string dir = sessile_config_out_dir(cfg);

  int code = kExitUsage;
  if (eq->parsed()) code = run_equilibrium(cfg, dir.c_str());
  else if (sim->parsed()) code = run_simulate(cfg, dir.c_str());
  else if (ver->parsed()) code = run_verify(cfg, dir.c_str());
  sessile_config_free(cfg);
  return code;
}
