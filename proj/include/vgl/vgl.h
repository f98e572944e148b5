/* vgl: multivortex solutions of the magnetic Ginzburg-Landau theory coupled
 * to gravity.  C API over the C++ core: opaque handles, status codes, and
 * string/buffer accessors.  All functions are synchronous and thread-safe on
 * distinct handles; the last-error message is thread-local.
 */
#ifndef VGL_H
#define VGL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vgl_status {
    VGL_OK = 0,
    VGL_ERR_INVALID_ARGUMENT = 1,
    VGL_ERR_VALIDATION = 2,      /* inadmissible parameters or config */
    VGL_ERR_NO_CONVERGENCE = 3,  /* solver budget exhausted; handle still valid */
    VGL_ERR_IO = 4,
    VGL_ERR_NUMERIC = 5          /* monotonicity/linear-solve/shooting failure */
} vgl_status;

typedef struct vgl_config vgl_config;
typedef struct vgl_planar_solution vgl_planar_solution;
typedef struct vgl_radial_solution vgl_radial_solution;

const char* vgl_version(void);
/* Thread-local detail of the most recent failure in this thread. */
const char* vgl_last_error(void);
void vgl_string_free(char* s);

/* -- configuration ------------------------------------------------------- */
vgl_status vgl_config_load(const char* path, vgl_config** out);
vgl_status vgl_config_from_json(const char* json_text, vgl_config** out);
/* Dotted-path override, e.g. "solver.tol=1e-9"; last one wins. */
vgl_status vgl_config_set(vgl_config* cfg, const char* key_eq_value);
/* Validation report as JSON: {passed, delta, deficit_angle, checks:[...]}. */
vgl_status vgl_config_validate(const vgl_config* cfg, char** report_json);
void vgl_config_free(vgl_config* cfg);

/* -- solvers -------------------------------------------------------------- */
/* Self-dual planar solve (lambda = 1).  On VGL_ERR_NO_CONVERGENCE the handle
 * is still produced and carries the partial solution. */
vgl_status vgl_solve_planar(const vgl_config* cfg, vgl_planar_solution** out);
vgl_status vgl_solve_radial(const vgl_config* cfg, vgl_radial_solution** out);
void vgl_planar_free(vgl_planar_solution* s);
void vgl_radial_free(vgl_radial_solution* s);

/* -- planar accessors ------------------------------------------------------ */
vgl_status vgl_planar_grid(const vgl_planar_solution* s, int* n, double* R);
/* name: "u", "v", "eta", "F12", "phi_abs"; buf must hold n*n doubles
 * (row-major, y outer). */
vgl_status vgl_planar_field(const vgl_planar_solution* s, const char* name, double* buf,
                            size_t len);
vgl_status vgl_planar_report_json(const vgl_planar_solution* s, char** json);
vgl_status vgl_planar_report_csv(const vgl_planar_solution* s, int with_header, char** csv);
vgl_status vgl_planar_telemetry_json(const vgl_planar_solution* s, char** json);
vgl_status vgl_planar_write_fields_csv(const vgl_planar_solution* s, const char* path);
vgl_status vgl_planar_write_fields_bin(const vgl_planar_solution* s, const char* path);

/* -- radial accessors ------------------------------------------------------ */
vgl_status vgl_radial_size(const vgl_radial_solution* s, int* count);
/* name: "r", "u", "du", "v", "dv", "eta"; buf must hold `count` doubles. */
vgl_status vgl_radial_profile(const vgl_radial_solution* s, const char* name, double* buf,
                              size_t len);
vgl_status vgl_radial_report_json(const vgl_radial_solution* s, char** json);
vgl_status vgl_radial_report_csv(const vgl_radial_solution* s, int with_header, char** csv);
vgl_status vgl_radial_telemetry_json(const vgl_radial_solution* s, char** json);
vgl_status vgl_radial_write_profile_csv(const vgl_radial_solution* s, const char* path);
/* Theorem-style property checks as JSON: {ok, checks:[{name,status,detail}]}. */
vgl_status vgl_radial_properties_json(const vgl_radial_solution* s, char** json);

/* -- command runner (what the CLI calls) ----------------------------------- */
/* command: solve-planar | solve-radial | observables | self-test.  Returns
 * the process exit code contract: 0 ok, 2 validation, 3 no-convergence,
 * 4 I/O.  run_dir/message (may be NULL) receive malloc'd strings. */
int vgl_run(const char* command, const vgl_config* cfg, const char* out_dir, int quiet,
            char** run_dir, char** message);
/* axis: G | lambda | N | g0; values: comma-separated list (may be empty). */
int vgl_run_sweep(const vgl_config* cfg, const char* axis, const char* values,
                  const char* out_dir, int quiet, char** run_dir, char** message);
int vgl_self_test(int quiet);

#ifdef __cplusplus
}
#endif

#endif /* VGL_H */
