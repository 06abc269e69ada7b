/*
 * envelope: approximate eigensolutions for N-body quantum systems.
 *
 * C interface to the solver library. All objects are opaque handles owned
 * by the caller and released with the matching *_free function. Functions
 * returning et_status report failure details through et_last_error(),
 * which is thread-local. Natural units (hbar = c = 1) throughout.
 */
#ifndef ENVELOPE_ENVELOPE_H
#define ENVELOPE_ENVELOPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum et_status {
  ET_OK = 0,
  ET_ERR_INVALID_INPUT = 1,  /* bad counts, quantum numbers, law parameters */
  ET_ERR_DOMAIN = 2,         /* argument outside a law's admissible domain */
  ET_ERR_NO_BINDING = 3,     /* the interaction does not bind */
  ET_ERR_DEGENERATE_LAW = 4, /* auxiliary inverse of a quadratic law */
  ET_ERR_NO_CONVERGENCE = 5, /* iteration budget exhausted */
  ET_ERR_NO_BOUND_STATE = 6, /* numeric oracle found no such state */
  ET_ERR_INTERNAL = 7
} et_status;

const char* et_status_name(et_status s);
/* Message describing the most recent failure on this thread. */
const char* et_last_error(void);

/* ---- laws ------------------------------------------------------------- */

typedef struct et_kinetic et_kinetic;   /* one-body kinetic energy T(p) */
typedef struct et_potential et_potential; /* pair potential V(r) */

/* Constructors return NULL on invalid parameters (see et_last_error). */
et_kinetic* et_kinetic_nonrelativistic(double mass);        /* p^2/(2m) */
et_kinetic* et_kinetic_relativistic(double mass);           /* sqrt(p^2+m^2) */
et_kinetic* et_kinetic_ultrarelativistic(void);             /* p */
et_kinetic* et_kinetic_power(double coef, double exponent); /* A p^b */
void et_kinetic_free(et_kinetic* k);

et_status et_kinetic_value(const et_kinetic* k, double p, double* out);
et_status et_kinetic_derivative(const et_kinetic* k, double p, double* out);
/* G(x) solving T'(G) = G/x; quadratic laws yield ET_ERR_DEGENERATE_LAW. */
et_status et_kinetic_aux_inverse(const et_kinetic* k, double x, double* out);

/* Sum of power terms sum_k coef_k r^(exp_k); at least one term must bind
 * (coef * exp > 0). A single r^2 term is the degenerate oscillator case. */
et_potential* et_potential_power(double coef, double exponent);
et_potential* et_potential_sum(const double* coefs, const double* exponents,
                               size_t nterms);
void et_potential_free(et_potential* v);

et_status et_potential_value(const et_potential* v, double r, double* out);
et_status et_potential_derivative(const et_potential* v, double r,
                                  double* out);
/* J(x) solving V'(J) = 2 x J. */
et_status et_potential_aux_inverse(const et_potential* v, double x,
                                   double* out);

/* ---- quantum numbers --------------------------------------------------- */

et_status et_pair_count(int64_t n, int64_t* out);
/* Ground-state band number (n-1) D/2 ((n-1)/2 in one dimension). */
et_status et_boson_ground_q(int64_t n, int32_t dim, double* out);
/* sum_i (2 n_i + l_i + D/2), or sum_i (n_i + 1/2) in one dimension. */
et_status et_global_quantum_number(const int64_t* n, const int64_t* l,
                                   size_t count, int32_t dim, double* out);

/* ---- systems ------------------------------------------------------------ */

typedef struct et_system et_system;

et_system* et_system_identical(int64_t n, int32_t dim, const et_kinetic* kin,
                               const et_potential* pot, double q);
/* v_aa (v_bb) may be NULL when the corresponding set holds one particle. */
et_system* et_system_two_species(int64_t n_a, int64_t n_b, int32_t dim,
                                 const et_kinetic* kinetic_a,
                                 const et_kinetic* kinetic_b,
                                 const et_potential* v_aa,
                                 const et_potential* v_bb,
                                 const et_potential* v_ab, double q_a,
                                 double q_b, double q_rel);
void et_system_free(et_system* s);

/* ---- solving ------------------------------------------------------------ */

typedef struct et_options {
  double tol;            /* scaled residual / gradient target (1e-10) */
  int32_t max_iter;      /* iteration budget (200) */
  double bracket_growth; /* geometric bracket expansion factor (2.0) */
  double damping;        /* initial Newton step fraction (1.0) */
} et_options;

void et_options_init(et_options* opt);

typedef struct et_result et_result;

/* Compact route: dispatches on the particle counts. */
et_status et_solve(const et_system* s, const et_options* opt, et_result** out);
/* Stationarity route over the auxiliary oscillator parameters. */
et_status et_extremize(const et_system* s, const et_options* opt,
                       et_result** out);
void et_result_free(et_result* r);

double et_result_energy(const et_result* r);
double et_result_residual_norm(const et_result* r);
int32_t et_result_iterations(const et_result* r);
/* "compact-identical", "compact-two-species", "compact-na-plus-1",
 * "compact-two-body" or "extremization". */
const char* et_result_method(const et_result* r);
/* Nonzero when several roots were bracketed (lowest energy returned). */
int32_t et_result_ambiguous(const et_result* r);

/* Mean momenta/distances: p0, rho0 / p_a, p_b, P0, r_aa, r_bb, R0,
 * p_prime_a, p_prime_b, r_prime_0 as applicable. */
size_t et_result_mean_count(const et_result* r);
const char* et_result_mean_name(const et_result* r, size_t i);
et_status et_result_mean(const et_result* r, const char* name, double* out);
/* Auxiliary parameters (extremization results only): mu_a, mu_b, rho_aa,
 * rho_bb, rho_ab. */
et_status et_result_aux(const et_result* r, const char* name, double* out);

/* Raw left-minus-right residuals of the applicable equation set, evaluated
 * at the result's energy and means. Order: energy equation first, then the
 * virial equations, then the quantization rules. */
et_status et_residuals(const et_system* s, const et_result* r, double* out,
                       size_t cap, size_t* count);

/* ---- oracles ------------------------------------------------------------ */

/* Exact eigenvalue when every potential is r^2 and every kinetic law is
 * quadratic. */
et_status et_oracle_exact_ho(const et_system* s, double* energy);

/* Numeric two-body reference from the reduced radial equation. In D=3 the
 * state is (n, l); in D=2 l >= 1; in D=1 l in {0,1} selects parity.
 * accuracy <= 0 selects the default (1e-8 relative). */
et_status et_oracle_radial_two_body(double mu, const et_potential* v,
                                    int32_t dim, int64_t n, int64_t l,
                                    double accuracy, double* energy,
                                    double* est_accuracy);

/* ---- validation ---------------------------------------------------------- */

/* Runs the invariant battery; cb is invoked once per check. Returns the
 * number of failed checks, or -1 on internal error. */
typedef void (*et_validate_cb)(const char* name, int32_t pass,
                               const char* detail, void* user);
int32_t et_validate_run(et_validate_cb cb, void* user);

#if defined(__cplusplus)
}
#endif

#endif /* ENVELOPE_ENVELOPE_H */
