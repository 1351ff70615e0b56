/* nsconic: primal-dual interior-point solver for nonsymmetric conic
 * optimization over the homogeneous self-dual model, with a built-in
 * per-iteration certification audit.
 *
 * All functions return NSC_OK on success; on failure nsc_last_error() holds a
 * thread-local human-readable message. Handles are opaque and freed with the
 * matching *_free function.
 */
#ifndef NSCONIC_H
#define NSCONIC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nsc_problem nsc_problem;
typedef struct nsc_result nsc_result;

typedef enum nsc_status {
    NSC_OK = 0,
    NSC_ERR_IO = 1,
    NSC_ERR_PARSE = 2,
    NSC_ERR_DIMENSION = 3,
    NSC_ERR_INVALID_ARGUMENT = 4,
    NSC_ERR_NUMERIC = 5,
    NSC_ERR_UNSUPPORTED = 6,
} nsc_status;

typedef enum nsc_solve_status {
    NSC_SOLVE_OPTIMAL = 0,
    NSC_SOLVE_PRIMAL_INFEASIBLE = 1,
    NSC_SOLVE_DUAL_INFEASIBLE = 2,
    NSC_SOLVE_UNKNOWN = 3,
} nsc_solve_status;

typedef enum nsc_mode {
    NSC_MODE_THEORETICAL = 0,
    NSC_MODE_ADAPTIVE = 1,
} nsc_mode;

typedef struct nsc_options {
    nsc_mode mode;
    double epsilon;       /* target scale factor in (0,1) */
    long max_iterations;  /* <= 0 selects the mode default cap */
    int verify;           /* nonzero: run the lemma audit every iteration */
    double beta;          /* <= 0 selects the default 0.9 */
    double alpha_override; /* <= 0: mode default */
    double gamma_override; /* < 0: mode default 0.9 */
} nsc_options;

void nsc_options_init(nsc_options *opts);

/* Problems */
nsc_status nsc_problem_load(const char *path, nsc_problem **out);
nsc_status nsc_problem_from_json(const char *json_text, nsc_problem **out);
void nsc_problem_free(nsc_problem *p);
int nsc_problem_rows(const nsc_problem *p);
int nsc_problem_cols(const nsc_problem *p);
double nsc_problem_barrier_degree(const nsc_problem *p);

/* Solving */
nsc_status nsc_solve(const nsc_problem *p, const nsc_options *opts, nsc_result **out);
void nsc_result_free(nsc_result *r);

nsc_solve_status nsc_result_status(const nsc_result *r);
long nsc_result_iterations(const nsc_result *r);
int nsc_result_converged(const nsc_result *r);
double nsc_result_objective(const nsc_result *r);
double nsc_result_tau(const nsc_result *r);
double nsc_result_kappa(const nsc_result *r);
double nsc_result_mu_e(const nsc_result *r);
double nsc_result_residual_norm(const nsc_result *r);
long nsc_result_verdict_failures(const nsc_result *r);

/* Solution access; buffers must hold at least the advertised length. For an
 * optimal status the vectors are already divided by tau; otherwise they are
 * the raw certificate/iterate. */
nsc_status nsc_result_primal(const nsc_result *r, double *x, size_t len);
nsc_status nsc_result_dual_y(const nsc_result *r, double *y, size_t len);
nsc_status nsc_result_dual_s(const nsc_result *r, double *s, size_t len);

/* Serialization. Strings returned through out_text are heap-allocated; free
 * them with nsc_string_free. */
nsc_status nsc_result_to_json(const nsc_result *r, char **out_text);
nsc_status nsc_result_write_trace(const nsc_result *r, const char *path);
void nsc_string_free(char *text);

/* Scalar-level audit of a saved trace file. beta <= 0 selects 0.9; eta <= 0
 * skips the shadow-distance column check. Returns the number of failed
 * checks through failures_out. */
nsc_status nsc_verify_trace(const char *path, double beta, double eta, long *failures_out);

/* Runs the built-in acceptance suite, printing one line per criterion to
 * stdout; returns the number of failed criteria. */
long nsc_selftest(void);

const char *nsc_last_error(void);
const char *nsc_status_name(nsc_status s);
const char *nsc_solve_status_name(nsc_solve_status s);

#ifdef __cplusplus
}
#endif

#endif /* NSCONIC_H */
