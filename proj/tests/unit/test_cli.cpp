#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "sessile/config.hpp"
#include "sessile/errors.hpp"
#include "sessile/sessile.h"

using namespace sessile;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sessile_unit_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string l;
  std::getline(in, l);
  return l;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SESSILE_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

const char* kSmallRun =
    "mesh.n_surface = 16\ntime.dt = 1e-3\ntime.t_end = 0.004\ninit.mode = surface_mode 2\n"
    "init.amplitude = 0.02\noutput.every = 2\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults and round trip") {
    const RunConfig d;
    CHECK(parse_config("") == d);
    CHECK(parse_config(serialize_config(d)) == d);
    RunConfig c = parse_config("physics.g = 2.5  # comment\ninit.mode = surface_mode 3\nresponse.kind = sinh\n");
    CHECK(c.g == 2.5);
    CHECK(c.init_mode == InitMode::SurfaceMode);
    CHECK(c.init_k == 3);
    CHECK(c.response_kind == "sinh");
    CHECK(parse_config(serialize_config(c)) == c);
  }

  TEST_CASE("parse errors carry the line number") {
    try {
      parse_config("physics.g = 1\n\nphysics.sigma = abc\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_config("nonsense.key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("physics.g\n"), ParseError);
    CHECK_THROWS_AS(parse_config("init.mode = spiral\n"), ParseError);
    CHECK_THROWS_AS(parse_config("numerics.contact_closure = magic\n"), ParseError);
  }

  TEST_CASE("validation names the violated constraint") {
    try {
      parse_config("physics.gamma_jump = 1.5\n");
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("gamma_jump/sigma") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("time.dt = -1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("mesh.n_surface = 15\n"), ValidationError);
  }

  TEST_CASE("C API: handles, errors and outputs") {
    sessile_config* c = nullptr;
    CHECK(sessile_config_parse("physics.g = oops\n", &c) == SESSILE_ERR_PARSE);
    CHECK(std::string(sessile_last_error()).find("line 1") != std::string::npos);
    CHECK(sessile_config_parse("physics.gamma_jump = 2\n", &c) == SESSILE_ERR_VALIDATION);
    CHECK(sessile_config_default(nullptr) == SESSILE_ERR_ARGUMENT);
    REQUIRE(sessile_config_parse(kSmallRun, &c) == SESSILE_OK);
    CHECK(sessile_config_set(c, "time.dt", "-1") == SESSILE_ERR_VALIDATION);
    CHECK(sessile_config_set(c, "physics.g", "1.0") == SESSILE_OK);
    char* text = nullptr;
    REQUIRE(sessile_config_serialize(c, &text) == SESSILE_OK);
    CHECK(std::string(text).find("time.dt = 0.001") != std::string::npos);
    sessile_string_free(text);

    sessile_equilibrium* e = nullptr;
    REQUIRE(sessile_equilibrium_solve(c, &e) == SESSILE_OK);
    sessile_equilibrium_info info{};
    CHECK(sessile_equilibrium_info_get(e, &info) == SESSILE_OK);
    CHECK(info.ell == doctest::Approx(1.2887812311488736).epsilon(1e-12));
    CHECK(info.mass_check < 1e-10);
    double v[3];
    CHECK(sessile_equilibrium_eval(e, 0.0, v) == SESSILE_OK);
    CHECK(v[0] == doctest::Approx(info.apex));
    CHECK(sessile_equilibrium_eval(e, 5.0, v) == SESSILE_ERR_DOMAIN);
    const fs::path eqdir = scratch("eq");
    CHECK(sessile_equilibrium_write(e, eqdir.c_str()) == SESSILE_OK);
    CHECK(first_line(eqdir / "equilibrium.csv") == "x1,zeta0,dzeta0,d2zeta0");
    CHECK(first_line(eqdir / "summary.csv") == "ell,P0,psi0,apex,mass_check");
    sessile_equilibrium_free(e);

    const fs::path simdir = scratch("sim");
    sessile_run* r = nullptr;
    REQUIRE(sessile_simulate(c, simdir.c_str(), &r) == SESSILE_OK);
    sessile_run_info ri{};
    sessile_run_info_get(r, &ri);
    CHECK(ri.n_rows == 5);
    CHECK(ri.n_snapshots == 3);
    sessile_row row{};
    CHECK(sessile_run_row(r, 4, &row) == SESSILE_OK);
    CHECK(row.t == doctest::Approx(0.004));
    CHECK(sessile_run_row(r, 5, &row) == SESSILE_ERR_ARGUMENT);
    sessile_run_free(r);
    CHECK(first_line(simdir / "timeseries.csv") ==
          "t,E,dE,D,residual,M,L,R,theta_L,theta_R,X1,X2,trace_mismatch,picard_iters,mass_correction");
    CHECK(first_line(simdir / "field_0.csv") == "x1,x2,u1,u2,p");
    CHECK(fs::exists(simdir / "field_2.csv"));
    CHECK(fs::exists(simdir / "field_4.csv"));
    CHECK(parse_config(slurp(simdir / "resolved_config.txt")).dt == 1e-3);

    // too large an initial amplitude: clean error and nothing written
    CHECK(sessile_config_set(c, "init.amplitude", "0.8") == SESSILE_OK);
    const fs::path bad = scratch("bad");
    CHECK(sessile_simulate(c, bad.c_str(), &r) == SESSILE_ERR_DIFFEOMORPHISM);
    CHECK(std::string(sessile_last_error()).find("diffeomorphism") != std::string::npos);
    CHECK_FALSE(fs::exists(bad));
    sessile_config_free(c);
  }

  TEST_CASE("command line exit codes") {
    const fs::path good = write_config("good.cfg", kSmallRun);
    const fs::path out = scratch("cli_out");
    CHECK(run_cli("equilibrium --config \"" + good.string() + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "equilibrium.csv"));
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate --config x") == 1);
    CHECK(run_cli("simulate") == 1);
    CHECK(run_cli("simulate --config /nonexistent/file.cfg") == 1);
    const fs::path malformed = write_config("bad_parse.cfg", "physics.g = ?\n");
    CHECK(run_cli("simulate --config \"" + malformed.string() + "\"") == 1);
    const fs::path invalid = write_config("bad_valid.cfg", "physics.gamma_jump = 1.5\n");
    const fs::path none = scratch("none");
    CHECK(run_cli("simulate --config \"" + invalid.string() + "\" --out \"" + none.string() + "\"") == 2);
    CHECK_FALSE(fs::exists(none));
    const fs::path big = write_config("big.cfg", std::string(kSmallRun) + "init.amplitude = 0.8\n");
    CHECK(run_cli("simulate --config \"" + big.string() + "\" --out \"" + none.string() + "\"") == 2);
    CHECK_FALSE(fs::exists(none));
    const fs::path sim = scratch("cli_sim");
    CHECK(run_cli("simulate --config \"" + good.string() + "\" --out \"" + sim.string() + "\"") == 0);
    CHECK(fs::exists(sim / "timeseries.csv"));
  }
}
