/* Casimir–Polder energies and forces for two-level atoms in a 1+1D cavity.
 *
 * Natural units: hbar = c = 1, lengths in units of the cavity length scale the
 * caller picks. Energies come out in 1/length, forces in 1/length^2; use
 * casimir_to_si to convert.
 *
 * Every function returns a casimir_status. On failure casimir_last_error()
 * holds a message for the calling thread. Handles are not shared between
 * threads without external locking; distinct handles may be used concurrently.
 */
#ifndef CASIMIR_CASIMIR_H
#define CASIMIR_CASIMIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(CASIMIR_BUILDING_LIBRARY)
#define CASIMIR_API __attribute__((visibility("default")))
#else
#define CASIMIR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    CASIMIR_OK = 0,
    CASIMIR_INVALID_ARGUMENT = 1,
    CASIMIR_DOMAIN_ERROR = 2,
    CASIMIR_POLE_ON_PATH = 3,
    CASIMIR_NO_CONVERGENCE = 4,
    CASIMIR_IMAGINARY_RESIDUE = 5,
    CASIMIR_NO_CROSSING = 6,
    CASIMIR_INTERNAL_ERROR = 7
} casimir_status;

typedef enum { CASIMIR_DIRICHLET = 0, CASIMIR_NEUMANN = 1 } casimir_boundary;
typedef enum { CASIMIR_BARE = 0, CASIMIR_SMEARED = 1 } casimir_coupling;
typedef enum { CASIMIR_FIXED_RATIO = 0, CASIMIR_FIXED_POSITION = 1, CASIMIR_ATOM_POSITION = 2 } casimir_constraint;
typedef enum { CASIMIR_TAIL_DEFAULT = 0, CASIMIR_TAIL_INTEGRAL_BOUND = 1, CASIMIR_TAIL_AVERAGED = 2 } casimir_tail_policy;

typedef struct {
    double value;
    double error_bound;
    int64_t modes_used;
    int closed_form; /* 1 when a closed form was evaluated */
} casimir_energy;

typedef struct {
    double value;
    double error_bound;
    int64_t modes_used;
    int finite_difference; /* 1 when obtained by differentiating the energy */
    int derived_extension; /* 1 for Neumann wall forces */
} casimir_force;

/* Cavity, one atom, coupling model and series controls. */
typedef struct casimir_system casimir_system;

CASIMIR_API casimir_status casimir_system_create(casimir_system** out);
CASIMIR_API void casimir_system_destroy(casimir_system* sys);
CASIMIR_API casimir_status casimir_system_clone(const casimir_system* sys, casimir_system** out);

/* defaults: L = 1, Dirichlet, x = 0.5, Omega = 2pi, lambda = 1e-4, a0 = 0, bare */
CASIMIR_API casimir_status casimir_set_cavity(casimir_system* sys, double length, casimir_boundary boundary);
CASIMIR_API casimir_status casimir_set_atom(casimir_system* sys, double x, double omega, double lambda, double a0);
CASIMIR_API casimir_status casimir_set_position(casimir_system* sys, double x);
CASIMIR_API casimir_status casimir_set_coupling(casimir_system* sys, casimir_coupling coupling, double alpha);
/* abs_tol = 0 selects 1e-14 lambda^2 */
CASIMIR_API casimir_status casimir_set_tolerances(casimir_system* sys, double rel_tol, double abs_tol, int64_t max_modes);
CASIMIR_API casimir_status casimir_set_tail_policy(casimir_system* sys, casimir_tail_policy policy);

CASIMIR_API casimir_status casimir_energy_series(const casimir_system* sys, casimir_energy* out);
CASIMIR_API casimir_status casimir_energy_closed_form(const casimir_system* sys, casimir_energy* out);
/* smeared coupling: the alpha-independent part and the coefficient of alpha */
CASIMIR_API casimir_status casimir_energy_parts(const casimir_system* sys, double* paramagnetic, double* diamagnetic);

CASIMIR_API casimir_status casimir_force_analytic(const casimir_system* sys, casimir_constraint constraint, casimir_force* out);
CASIMIR_API casimir_status casimir_force_fd(const casimir_system* sys, casimir_constraint constraint, casimir_force* out);

/* atom force at each alpha; *alpha_star is set when *has_crossing is 1 */
CASIMIR_API casimir_status casimir_alpha_sweep(const casimir_system* sys, const double* alphas, size_t count,
                                               casimir_force* out, int* has_crossing, double* alpha_star,
                                               int* sign_changes);

/* N atoms sharing the system's Omega, lambda and a0. positions == NULL places
 * them uniformly at L n/(N+1). */
CASIMIR_API casimir_status casimir_medium_energy(const casimir_system* sys, int64_t count, const double* positions,
                                                 casimir_energy* out, int* pws_warning);
CASIMIR_API casimir_status casimir_medium_force(const casimir_system* sys, int64_t count, const double* positions,
                                                casimir_constraint constraint, casimir_force* out, int* pws_warning);

CASIMIR_API casimir_status casimir_empty_cavity_force(double length, double* out);
/* is_force = 0: energy (J), 1: force (N) */
CASIMIR_API casimir_status casimir_to_si(double value, int is_force, double length_meters, double* out);
CASIMIR_API casimir_status casimir_hydrogen_matrix_element(double a0, double* out);

/* Fourth-order pair terms (Dirichlet, bare). Fixed-ratio force is analytic,
 * fixed-position force comes from the energy by finite differences. */
CASIMIR_API casimir_status casimir_pair_energy(const casimir_system* sys, double x_a, double x_b, casimir_energy* out);
CASIMIR_API casimir_status casimir_pair_force(const casimir_system* sys, double x_a, double x_b,
                                              casimir_constraint constraint, casimir_force* out);
CASIMIR_API casimir_status casimir_pair_force_fd(const casimir_system* sys, double x_a, double x_b,
                                                 casimir_constraint constraint, casimir_force* out);

/* Critical atom number scan over uniform media. The scan handle is filled even
 * when the status is CASIMIR_NO_CROSSING. */
typedef struct casimir_scan casimir_scan;

typedef struct {
    int64_t atoms;
    double medium_force;
    double pair_force;
    double total_force;
} casimir_scan_row;

CASIMIR_API casimir_status casimir_critical_scan(const casimir_system* sys, casimir_constraint constraint,
                                                 int64_t n_max, int include_pairs, size_t table_points,
                                                 casimir_scan** out);
CASIMIR_API void casimir_scan_destroy(casimir_scan* scan);
CASIMIR_API int casimir_scan_found(const casimir_scan* scan);
CASIMIR_API double casimir_scan_n_star(const casimir_scan* scan);
CASIMIR_API void casimir_scan_bracket(const casimir_scan* scan, int64_t* below, int64_t* above);
CASIMIR_API int casimir_scan_pws_warning(const casimir_scan* scan);
CASIMIR_API size_t casimir_scan_rows(const casimir_scan* scan);
CASIMIR_API casimir_status casimir_scan_row_at(const casimir_scan* scan, size_t index, casimir_scan_row* row);

/* Validation suite. The JSON report is byte-identical for equal seeds. */
enum { CASIMIR_VALIDATE_INJECT_SIGN_FLIP = 1, CASIMIR_VALIDATE_SKIP_PAIRS = 2 };

typedef struct casimir_report casimir_report;

CASIMIR_API casimir_status casimir_validate(uint64_t seed, int sets_per_case, int flags, casimir_report** out);
CASIMIR_API void casimir_report_destroy(casimir_report* report);
CASIMIR_API const char* casimir_report_json(const casimir_report* report);
CASIMIR_API int casimir_report_total(const casimir_report* report);
CASIMIR_API int casimir_report_failed(const casimir_report* report);
CASIMIR_API int casimir_report_suspect(const casimir_report* report);

/* Special functions. Complex arguments as (re, im) pairs. */
CASIMIR_API casimir_status casimir_lerch_phi(double z_re, double z_im, double s, double a_re, double a_im,
                                             double abs_tol, double* re, double* im, double* error);
CASIMIR_API casimir_status casimir_hyp2f1(const double a[2], const double b[2], const double c[2], const double z[2],
                                          double abs_tol, double* re, double* im, double* error);
CASIMIR_API casimir_status casimir_inc_beta(const double z[2], const double a[2], const double b[2], double abs_tol,
                                            double* re, double* im, double* error);
CASIMIR_API casimir_status casimir_polygamma(int n, double x_re, double x_im, double* re, double* im);
CASIMIR_API casimir_status casimir_gen_harmonic(double x, double* out);

CASIMIR_API const char* casimir_last_error(void);
CASIMIR_API const char* casimir_status_string(casimir_status status);
CASIMIR_API const char* casimir_version(void);

#ifdef __cplusplus
}
#endif

#endif
