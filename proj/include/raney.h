#ifndef RANEY_H
#define RANEY_H

/*
 * C interface to the raney numerical laboratory.
 *
 * Conventions:
 *  - Every function returns a status code (RANEY_OK on success) unless noted.
 *  - On failure, raney_last_error() returns a thread-local message describing
 *    the most recent error on the calling thread.
 *  - Objects are opaque handles created by *_create functions and released by
 *    the matching *_destroy; destroy functions accept NULL.
 *  - Rational parameters are passed as strings: "3", "-5/2", "1/3".
 *  - Strings returned through char** out-parameters are heap-allocated and
 *    must be released with raney_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    RANEY_OK = 0,
    RANEY_ERR_ARGUMENT = 2, /* invalid parameter or out-of-domain input */
    RANEY_ERR_NUMERIC = 3   /* iteration/quadrature failed to converge */
};

/* Library version string, e.g. "1.0.0". Never fails. */
const char* raney_version(void);

/* Thread-local message for the last failing call on this thread. */
const char* raney_last_error(void);

void raney_string_free(char* s);

/* ---------------------------------------------------------------- params */

typedef struct raney_params raney_params;

/* Validated (p, r) pair; p > 1 and 0 < r <= p, both rational strings. */
int raney_params_create(const char* p, const char* r, raney_params** out);

/* Same record built from family coordinates (p, r) = (theta/q + 1, m + 1/q). */
int raney_params_create_family(const char* theta, long q, long m, raney_params** out);

void raney_params_destroy(raney_params* h);

/* Upper support endpoint L = p^p (p-1)^{-(p-1)}. */
int raney_params_edge(const raney_params* h, double* L);

/* 1 when family coordinates (theta, q, m) exist for this (p, r), else 0. */
int raney_params_has_family(const raney_params* h, int* has_family,
                            long* q, long* m);

/* Exact moment as a rational string (optional) and as a double. */
int raney_exact_moment(const raney_params* h, long n, char** rational_out,
                       double* value_out);

/* Closed-form moment from the kernel factorization; requires family
 * coordinates. Agrees with raney_exact_moment to ~1e-12 relative. */
int raney_wh_moment(const raney_params* h, long n, double* value_out);

/* ----------------------------------------------------------------- curve */

typedef struct raney_curve raney_curve;

int raney_curve_create(const raney_params* params, raney_curve** out);
void raney_curve_destroy(raney_curve* h);

/* Density at a single point of (0, L). */
int raney_density_eval(const raney_curve* h, double x, double* rho);

/* n-th moment of the density by adaptive quadrature (tol is relative). */
int raney_density_moment(const raney_curve* h, long n, double tol, double* out);

typedef struct raney_profile raney_profile;

/* Density sampled on a clustered grid; npoints >= 16. */
int raney_density_sample(const raney_curve* h, int npoints, raney_profile** out);
void raney_profile_destroy(raney_profile* h);

int raney_profile_size(const raney_profile* h, int* n);
/* Borrowed pointers, valid while the profile lives. */
int raney_profile_data(const raney_profile* h, const double** x, const double** rho);
int raney_profile_info(const raney_profile* h, double* L, double* mass,
                       double* exponent_at_zero, double* exponent_at_one);

/* ----------------------------------------------------- potential / coeffs */

typedef struct raney_potential raney_potential;

/* One-body potential coefficients c_l and residue weights alpha_l for the
 * (theta/q + 1, m + 1/q) family; theta is a rational string. */
int raney_potential_create(const char* theta, long q, long m, raney_potential** out);
void raney_potential_destroy(raney_potential* h);

/* Number of coefficients (m + 1). */
int raney_potential_size(const raney_potential* h, int* n);
/* Fills caller arrays of length >= m+1. pole_flags[l] is nonzero where the
 * defining gamma ratio degenerates. Any output pointer may be NULL. */
int raney_potential_coeffs(const raney_potential* h, double* c, double* alpha,
                           int* pole_flags);
int raney_potential_info(const raney_potential* h, double* L, int* validity_warning);

/* ------------------------------------------------------------ equilibrium */

/* Residual of the differentiated equilibrium condition for the
 * (theta/q + 1, m + 1/q) family at each y in (0, 1). grid_points controls
 * the density sample (>= 16). Residuals are written raw, never clipped. */
int raney_equilibrium_residuals(const char* theta, long q, long m,
                                const double* y, int ny, int grid_points,
                                double* residuals_out);

/* Residual of the field-free (weightless) equilibrium condition for the
 * integer-theta Jacobi density at each y. */
int raney_jacobi_residuals(long theta, const double* y, int ny, int grid_points,
                           double* residuals_out);

/* --------------------------------------------------------- kernel report */

/* JSON report for the (theta, q) kernel: factorization identity deviation
 * at seeded sample points, Fourier-integral kernel check, residue, the
 * constant c, and large-|z| asymptotic ratios. theta is a rational string. */
int raney_wh_report(const char* theta, long q, uint64_t seed, char** json_out);

/* ------------------------------------------------------------ monte carlo */

typedef struct raney_mcrun raney_mcrun;

/* trials x N scaled squared singular values of an M-fold Gaussian matrix
 * product, divided by N^M. Deterministic in (N, M, trials, seed). */
int raney_mc_run(int N, int M, long trials, uint64_t seed, raney_mcrun** out);
void raney_mcrun_destroy(raney_mcrun* h);

int raney_mcrun_size(const raney_mcrun* h, long* count);
/* Borrowed pointer to the sorted scaled values. */
int raney_mcrun_values(const raney_mcrun* h, const double** values);

/* JSON report comparing the run against the (M+1, 1) model density:
 * empirical vs exact moments, histogram over [0, L], KS distance. */
int raney_mc_report(const raney_mcrun* h, int nbins, long max_moment,
                    char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* RANEY_H */
