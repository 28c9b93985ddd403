#ifndef NTF_H
#define NTF_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NtfStatus {
  NTF_STATUS_OK = 0,
  NTF_STATUS_NULL_ARGUMENT = 1,
  NTF_STATUS_INVALID_UTF8 = 2,
  NTF_STATUS_PARSE_ERROR = 3,
  NTF_STATUS_LOGIC_ERROR = 4,
  NTF_STATUS_TYPE_ERROR = 5,
  NTF_STATUS_EMBEDDING_ERROR = 6,
  NTF_STATUS_MODEL_ERROR = 7,
  NTF_STATUS_DERIVATION_ERROR = 8,
  NTF_STATUS_PANIC = 9,
} NtfStatus;

typedef enum NtfSzs {
  NTF_SZS_THEOREM = 0,
  NTF_SZS_COUNTER_SATISFIABLE = 1,
  NTF_SZS_SATISFIABLE = 2,
  NTF_SZS_UNSATISFIABLE = 3,
  NTF_SZS_UNKNOWN = 4,
  NTF_SZS_GAVE_UP = 5,
} NtfSzs;

/**
 * A parsed problem, derivation or interpretation.
 */
typedef struct NtfProblem NtfProblem;

typedef struct NtfCensus {
  size_t statements;
  size_t type_declarations;
  size_t nonclassical_nonindexed;
  size_t nonclassical_indexed;
  size_t equalities;
  size_t quantifiers;
} NtfCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *ntf_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ntf_string_free(char *s);

/**
 * Parses TPTP text. Include directives are recorded but not resolved.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum NtfStatus ntf_problem_parse(const char *source, struct NtfProblem **out);

/**
 * Releases a problem. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void ntf_problem_free(struct NtfProblem *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum NtfStatus ntf_problem_census(const struct NtfProblem *p, struct NtfCensus *out);

/**
 * Renders the problem as TPTP text.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum NtfStatus ntf_problem_print(const struct NtfProblem *p, char **out);

/**
 * Normalises the logic specification and renders it.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum NtfStatus ntf_problem_check_spec(const struct NtfProblem *p, char **out);

/**
 * Embeds a modal problem into classical typed first-order logic.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum NtfStatus ntf_problem_embed(const struct NtfProblem *p, struct NtfProblem **out);

/**
 * Searches for a finite countermodel. `budget` of zero selects the
 * default. On success `szs` holds the outcome and, when a model was found,
 * `model_out` (if non-null) receives it as a Kripke interpretation;
 * otherwise it is set to null.
 *
 * # Safety
 * `p` must be a live handle; `szs` must be writable; `model_out` must be
 * null or writable.
 */
enum NtfStatus ntf_problem_find_countermodel(const struct NtfProblem *p,
                                             size_t max_worlds,
                                             size_t max_elems,
                                             uint64_t budget,
                                             enum NtfSzs *szs,
                                             char **model_out);

/**
 * Checks acyclicity, completeness and, when `original` is non-null, leaf
 * origin of a derivation. `passed` receives 1 or 0; `report` (if non-null)
 * receives the rendered report.
 *
 * # Safety
 * `derivation` must be a live handle; `original` must be null or a live
 * handle; `passed` must be writable; `report` must be null or writable.
 */
enum NtfStatus ntf_derivation_verify(const struct NtfProblem *derivation,
                                     const struct NtfProblem *original,
                                     int32_t *passed,
                                     char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NTF_H */
