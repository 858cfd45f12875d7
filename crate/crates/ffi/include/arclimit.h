#ifndef ARCLIMIT_H
#define ARCLIMIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArclimitOutcome {
  ARCLIMIT_OUTCOME_ARC = 0,
  ARCLIMIT_OUTCOME_NOT_ARC = 1,
  ARCLIMIT_OUTCOME_UNDECIDED = 2,
} ArclimitOutcome;

typedef enum ArclimitStatus {
  ARCLIMIT_STATUS_OK = 0,
  ARCLIMIT_STATUS_NULL_ARGUMENT = 1,
  ARCLIMIT_STATUS_INVALID_UTF8 = 2,
  ARCLIMIT_STATUS_PARSE_ERROR = 3,
  ARCLIMIT_STATUS_INVALID_MAP = 4,
  ARCLIMIT_STATUS_DOMAIN_ERROR = 5,
  ARCLIMIT_STATUS_NOT_SURJECTIVE = 6,
  ARCLIMIT_STATUS_BUDGET_EXCEEDED = 7,
  ARCLIMIT_STATUS_REPLAY_FAILURE = 8,
  ARCLIMIT_STATUS_PRECONDITION_VIOLATED = 9,
  ARCLIMIT_STATUS_PANIC = 10,
  ARCLIMIT_STATUS_OTHER_ERROR = 11,
} ArclimitStatus;

/**
 * A splitting certificate `(A, B, D, k)`.
 */
typedef struct ArclimitCert ArclimitCert;

/**
 * A piecewise-linear map of `[0, 1]` with rational breakpoints.
 */
typedef struct ArclimitMap ArclimitMap;

/**
 * The result of `arclimit_decide`.
 */
typedef struct ArclimitVerdict ArclimitVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *arclimit_last_error(void);

/**
 * Library version as a static string.
 */
const char *arclimit_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void arclimit_string_free(char *s);

/**
 * Parses a `plmap v1` document.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ArclimitStatus arclimit_map_parse(const char *text, struct ArclimitMap **out);

/**
 * A built-in map such as `tent`, `bs_f` or `henderson:3`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum ArclimitStatus arclimit_map_from_corpus(const char *name, struct ArclimitMap **out);

/**
 * # Safety
 * `map` must be NULL or a handle from this library, not yet freed.
 */
void arclimit_map_free(struct ArclimitMap *map);

/**
 * Serialises a map as `plmap v1`.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum ArclimitStatus arclimit_map_to_string(const struct ArclimitMap *map, char **out);

/**
 * Number of breakpoints in canonical form.
 *
 * # Safety
 * `map` must be NULL or a live handle.
 */
size_t arclimit_map_breakpoint_count(const struct ArclimitMap *map);

/**
 * Evaluates the map exactly at a rational such as `"2/7"`; the result is
 * written as `p/q`.
 *
 * # Safety
 * `map` must be a live handle, `x` a NUL-terminated string and `out`
 * writable.
 */
enum ArclimitStatus arclimit_map_eval(const struct ArclimitMap *map, const char *x, char **out);

/**
 * The `k`-fold composition.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum ArclimitStatus arclimit_map_iterate(const struct ArclimitMap *map,
                                         size_t k,
                                         struct ArclimitMap **out);

/**
 * Runs the verdict pipeline with certificate orders up to `k_max` and
 * replay length `depth`.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum ArclimitStatus arclimit_decide(const struct ArclimitMap *map,
                                    size_t k_max,
                                    size_t depth,
                                    struct ArclimitVerdict **out);

/**
 * # Safety
 * `verdict` must be a live handle.
 */
enum ArclimitOutcome arclimit_verdict_outcome(const struct ArclimitVerdict *verdict);

/**
 * Pipeline stage that produced the verdict; 0 for a NULL handle.
 *
 * # Safety
 * `verdict` must be NULL or a live handle.
 */
uint8_t arclimit_verdict_stage(const struct ArclimitVerdict *verdict);

/**
 * Copies the verdict's certificate into a new handle, or writes NULL when
 * there is none.
 *
 * # Safety
 * `verdict` must be a live handle; `out` must be writable.
 */
enum ArclimitStatus arclimit_verdict_certificate(const struct ArclimitVerdict *verdict,
                                                 struct ArclimitCert **out);

/**
 * The `arcreport v1` text for a verdict on `map`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum ArclimitStatus arclimit_verdict_report(const struct ArclimitMap *map,
                                            const struct ArclimitVerdict *verdict,
                                            char **out);

/**
 * # Safety
 * `verdict` must be NULL or a handle from this library, not yet freed.
 */
void arclimit_verdict_free(struct ArclimitVerdict *verdict);

/**
 * Parses a `splitcert v1` document.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ArclimitStatus arclimit_cert_parse(const char *text, struct ArclimitCert **out);

/**
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum ArclimitStatus arclimit_cert_to_string(const struct ArclimitCert *cert, char **out);

/**
 * The order `k`; 0 for a NULL handle.
 *
 * # Safety
 * `cert` must be NULL or a live handle.
 */
size_t arclimit_cert_order(const struct ArclimitCert *cert);

/**
 * Replays `n_terms` terms of the sequence the certificate generates for
 * `map`. Returns `ARCLIMIT_STATUS_REPLAY_FAILURE` when a condition fails.
 *
 * # Safety
 * Both handles must be live.
 */
enum ArclimitStatus arclimit_cert_verify(const struct ArclimitMap *map,
                                         const struct ArclimitCert *cert,
                                         size_t n_terms);

/**
 * # Safety
 * `cert` must be NULL or a handle from this library, not yet freed.
 */
void arclimit_cert_free(struct ArclimitCert *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARCLIMIT_H */
