#ifndef IMQFAST_H
#define IMQFAST_H

/* C interface to the fast inverse-multiquadric kernel evaluator.
 *
 * Conventions:
 *   - point sets are interleaved coordinate pairs x1,x2 (length 2n),
 *   - every function returning int yields IMQ_OK on success and an error
 *     code on failure; imq_last_error() returns a thread-local message
 *     describing the most recent failure in the calling thread,
 *   - output buffers are caller-allocated unless documented otherwise.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  IMQ_OK = 0,
  IMQ_ERR_INVALID_ARG = 1,
  IMQ_ERR_SINGULAR = 2,
  IMQ_ERR_IO = 3,
  IMQ_ERR_INTERNAL = 4
};

typedef struct imq_operator imq_operator;

const char* imq_last_error(void);

/* Builds the hierarchical fast operator for the n points with shape
 * parameter t > 0 and truncation order 0 <= m <= 60. levels = 0 picks the
 * level count automatically from the cost model; levels >= 1 forces it. */
int imq_operator_create(const double* xy, size_t n, double t, int m, int levels,
                        imq_operator** out);
void imq_operator_destroy(imq_operator* op); /* NULL is a no-op */
int imq_operator_size(const imq_operator* op, size_t* out);
int imq_operator_levels(const imq_operator* op, int* out);

/* b = A u with a_{ij} = 1/sqrt(t^2 + ||x_i - x_j||^2); u, b_out of length n. */
int imq_operator_apply(const imq_operator* op, const double* u, double* b_out);

/* Exact O(n^2) product, no matrix stored. */
int imq_dense_matvec(const double* xy, size_t n, double t, const double* u, double* b_out);

/* Assembles A and solves A c = f by pivoted LU with one refinement step.
 * Enforces a relative infinity-norm residual of at most 1e-10 and fails with
 * IMQ_ERR_SINGULAR when the factorization cannot reach it. n is capped at
 * 5000 by the assembly guard. residual_out may be NULL. */
int imq_dense_solve(const double* xy, size_t n, double t, const double* f, double* c_out,
                    double* residual_out);

typedef struct {
  int iterations;
  double final_relative_residual;
  int converged;
} imq_solve_stats;

/* Restarted GMRES on the fast operator, zero initial guess, stopping on
 * ||A c - f||_2 / ||f||_2 <= tol. max_iter caps total Arnoldi steps.
 * stats_out may be NULL. Non-convergence is reported through the stats,
 * not as an error. */
int imq_iterative_solve(const imq_operator* op, const double* f, double tol, int max_iter,
                        int restart, double* c_out, imq_solve_stats* stats_out);

/* out[q] = sum_j c[j] / sqrt(t^2 + ||x_q - y_j||^2) for the nx query points. */
int imq_evaluate_interpolant(const double* centers_xy, const double* c, size_t n, double t,
                             const double* x_xy, size_t nx, double* out);

/* 1/||X - Y|| for X, Y in R^3 (arrays of 3); fails on coincident points. */
int imq_green_exact(const double* x3, const double* y3, double* out);

/* Order-m spherical-harmonic truncation of 1/||X - Y||; fails when
 * ||X|| = ||Y|| (the expansion needs strict radius ordering). */
int imq_green_truncated(const double* x3, const double* y3, int m, double* out);

/* Tail bound r^{m+1} / (rho_major (1 - r)), 0 <= r < 1. */
int imq_truncation_error_bound(double rho_major, double r, int m, double* out);

/* Cost-model level selection and the bound it minimizes. */
int imq_auto_level(size_t n, int m, int* out);
int imq_cost_upper_bound(size_t n, int m, int levels, double* out);

/* First n Halton points, bases (2, 3), written interleaved into xy_out. */
int imq_halton2d(size_t n, double* xy_out);

/* n uniform values on [-1, 1]; deterministic per seed. */
int imq_random_vector(size_t n, unsigned long long seed, double* out);

/* Reads a whitespace-separated two-column point file ('#' comments allowed).
 * On success *xy_out is a malloc'd interleaved array of length 2 * *n_out;
 * release it with imq_free. */
int imq_read_points(const char* path, double** xy_out, size_t* n_out);
int imq_write_points(const char* path, const double* xy, size_t n);
void imq_free(void* p);

/* Worker-thread cap for operator application; n >= 1. Without OpenMP support
 * compiled in, accepted and ignored. */
int imq_set_threads(int n);

typedef struct {
  const double* xy; /* interleaved, length 2n */
  size_t n;
  double t;
  int m;
  int levels; /* 0 = automatic */
  unsigned long long seed;
} imq_verify_config;

typedef void (*imq_verify_callback)(const char* name, int pass, double value, void* user_data);

/* Runs the built-in structural and numerical self checks on the given
 * configuration (separation ratios, interaction-list bounds, exact cover,
 * agreement with the dense oracle, moment structure, linearity,
 * determinism), invoking the callback once per check with the measured
 * value. Returns the number of failed checks, or a negated error code on
 * invalid input. */
int imq_verify(const imq_verify_config* cfg, imq_verify_callback cb, void* user_data);

#ifdef __cplusplus
}
#endif

#endif /* IMQFAST_H */
