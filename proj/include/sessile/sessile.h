#ifndef SESSILE_SESSILE_H
#define SESSILE_SESSILE_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(SESSILE_BUILDING)
#define SESSILE_API __declspec(dllexport)
#else
#define SESSILE_API __declspec(dllimport)
#endif
#else
#define SESSILE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sessile_status {
  SESSILE_OK = 0,
  SESSILE_ERR_ARGUMENT = 1,     /* null handle or bad argument */
  SESSILE_ERR_PARSE = 2,        /* malformed configuration text */
  SESSILE_ERR_VALIDATION = 3,   /* configuration violates a constraint */
  SESSILE_ERR_DIFFEOMORPHISM = 4, /* initial state does not define a valid map */
  SESSILE_ERR_IO = 5,
  SESSILE_ERR_DOMAIN = 6,
  SESSILE_ERR_CONVERGENCE = 7,
  SESSILE_ERR_NUMERIC = 8,      /* mesh, assembly or singular linear system */
  SESSILE_ERR_STEP = 9,         /* time step rejected after all retries */
  SESSILE_ERR_INTERNAL = 10
} sessile_status;

typedef struct sessile_config sessile_config;
typedef struct sessile_equilibrium sessile_equilibrium;
typedef struct sessile_run sessile_run;

/* Message of the last failure on the calling thread ("" if none). */
SESSILE_API const char* sessile_last_error(void);
SESSILE_API const char* sessile_status_name(sessile_status s);
SESSILE_API void sessile_string_free(char* s);

/* Configuration: "section.key = value" lines, '#' comments. */
SESSILE_API sessile_status sessile_config_default(sessile_config** out);
SESSILE_API sessile_status sessile_config_parse(const char* text, sessile_config** out);
SESSILE_API sessile_status sessile_config_load(const char* path, sessile_config** out);
/* Applies one assignment and revalidates; the config is unchanged on failure. */
SESSILE_API sessile_status sessile_config_set(sessile_config* c, const char* key, const char* value);
/* All keys with resolved values; free with sessile_string_free. */
SESSILE_API sessile_status sessile_config_serialize(const sessile_config* c, char** out);
/* Value of output.dir; owned by the config. */
SESSILE_API const char* sessile_config_out_dir(const sessile_config* c);
SESSILE_API void sessile_config_free(sessile_config* c);

typedef struct sessile_equilibrium_info {
  double ell, P0, psi0, apex, mass_check;
} sessile_equilibrium_info;

SESSILE_API sessile_status sessile_equilibrium_solve(const sessile_config* c, sessile_equilibrium** out);
SESSILE_API sessile_status sessile_equilibrium_info_get(const sessile_equilibrium* e,
                                                       sessile_equilibrium_info* out);
/* zeta0, d zeta0 / dx1, d2 zeta0 / dx1^2 at x1 in [-ell, ell]. */
SESSILE_API sessile_status sessile_equilibrium_eval(const sessile_equilibrium* e, double x1, double out[3]);
/* equilibrium.csv, summary.csv and resolved_config.txt into dir. */
SESSILE_API sessile_status sessile_equilibrium_write(const sessile_equilibrium* e, const char* dir);
SESSILE_API void sessile_equilibrium_free(sessile_equilibrium* e);

typedef struct sessile_row {
  double t, E, dE, D, residual, M, L, R, theta_L, theta_R, X1, X2;
  double trace_mismatch, contact_law_residual, h1_proxy, mass_correction;
  int picard_iters;
} sessile_row;

typedef struct sessile_run_info {
  size_t n_rows;
  double com_drift;
  double max_mass_correction;
  int total_halvings;
  int n_snapshots;
} sessile_run_info;

/* Runs the configured simulation. With a non-null dir, writes
   resolved_config.txt, field_<step>.csv snapshots and timeseries.csv there;
   nothing is written if the configuration or the initial state is invalid. */
SESSILE_API sessile_status sessile_simulate(const sessile_config* c, const char* dir, sessile_run** out);
SESSILE_API sessile_status sessile_run_info_get(const sessile_run* r, sessile_run_info* out);
SESSILE_API sessile_status sessile_run_row(const sessile_run* r, size_t i, sessile_row* out);
SESSILE_API void sessile_run_free(sessile_run* r);

/* Runs the invariant suite. all_passed receives 1 or 0; report (optional)
   receives the text written to verify_report.txt when dir is non-null. */
SESSILE_API sessile_status sessile_verify(const sessile_config* c, const char* dir, int* all_passed,
                                         char** report);

#ifdef __cplusplus
}
#endif

#endif
