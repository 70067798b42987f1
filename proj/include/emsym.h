/* emsym: exact Hecke machinery on truncated algebras of modular groups.
 *
 * C interface over the C++ core: opaque handles, status codes, and
 * JSON-string reports. Every char** output is owned by the caller and must
 * be released with emsym_string_free.
 */
#ifndef EMSYM_H
#define EMSYM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EMSYM_OK = 0,
  EMSYM_ERR_VERIFY = 1,   /* a verification suite failed */
  EMSYM_ERR_USAGE = 2,    /* invalid arguments or malformed input */
  EMSYM_ERR_RESOURCE = 3, /* configured resource cap exceeded */
  EMSYM_ERR_INTERNAL = 4
} emsym_status;

typedef struct emsym_presentation emsym_presentation;
typedef struct emsym_model emsym_model;
typedef struct emsym_hecke emsym_hecke;

const char* emsym_version(void);

/* Last error message of the calling thread; valid until the next call. */
const char* emsym_last_error(void);

void emsym_string_free(char* s);

/* Working precision (bits) of the numerical layer; default 128. */
emsym_status emsym_set_precision_bits(long bits);

/* --- modular group --------------------------------------------------- */

emsym_status emsym_presentation_create(long level, emsym_presentation** out);
void emsym_presentation_free(emsym_presentation* p);
long emsym_presentation_genus(const emsym_presentation* p);
long emsym_presentation_cusp_count(const emsym_presentation* p);
long emsym_presentation_free_rank(const emsym_presentation* p);
long emsym_presentation_psl_index(const emsym_presentation* p);
emsym_status emsym_presentation_to_json(const emsym_presentation* p, char** out);
emsym_status emsym_presentation_from_json(const char* text,
                                          emsym_presentation** out);
emsym_status emsym_presentation_hash(const emsym_presentation* p, char** out);
emsym_status emsym_group_report(long level, char** json_out);

/* --- truncated algebra ------------------------------------------------ */

emsym_status emsym_model_create(const emsym_presentation* p, int truncation,
                                emsym_model** out);
void emsym_model_free(emsym_model* m);
long emsym_model_dim(const emsym_model* m);
emsym_status emsym_model_graded_dims(const emsym_model* m, long* buf,
                                     size_t buflen, size_t* written);
emsym_status emsym_model_to_json(const emsym_model* m, char** out);
emsym_status emsym_algebra_report(long level, int truncation, char** json_out);

/* --- Hecke operators --------------------------------------------------- */

/* kind: "Tp" or "Tpp" */
emsym_status emsym_hecke_create(const emsym_model* m, const char* kind, long p,
                                emsym_hecke** out);
void emsym_hecke_free(emsym_hecke* h);
emsym_status emsym_hecke_to_json(const emsym_hecke* h, char** out);
/* dims, filtration preservation, augmentation mass */
emsym_status emsym_hecke_summary(const emsym_hecke* h, char** json_out);
emsym_status emsym_grade_spectrum(const emsym_model* m, const char* kind,
                                  long p, int grade, char** json_out);
emsym_status emsym_components_report(const emsym_model* m, const long* primes,
                                     size_t nprimes, char** json_out);

/* --- verification ------------------------------------------------------ */

/* suite: commutativity | filtration | dichotomy | roots | symbols.
 * Returns EMSYM_OK with *pass = 0 or 1; the JSON report carries details and
 * counterexample dumps. */
emsym_status emsym_verify(const char* suite, long level, int truncation,
                          const long* primes, size_t nprimes, int* pass,
                          char** json_out);

/* --- periods ------------------------------------------------------------ */

emsym_status emsym_periods_shuffle(const char* qexp_path1,
                                   const char* qexp_path2, long level,
                                   double tau_re, double tau_im,
                                   char** json_out);
emsym_status emsym_periods_mlv(const char* qexp_path, long level, int depth,
                               const char* cusp, char** json_out);
/* values file: one value per line, "re im err"; the first line is the
 * target, the rest are candidates. */
emsym_status emsym_periods_relate(const char* values_path, long bound,
                                  char** json_out);

#ifdef __cplusplus
}
#endif

#endif
