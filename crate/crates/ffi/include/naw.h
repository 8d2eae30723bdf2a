#ifndef NAW_H
#define NAW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum NawStatus {
  NAW_STATUS_OK = 0,
  NAW_STATUS_NULL_POINTER = 1,
  NAW_STATUS_INVALID_UTF8 = 2,
  NAW_STATUS_INVALID_INPUT = 3,
  NAW_STATUS_PARSE = 4,
  NAW_STATUS_CAP_EXCEEDED = 5,
  NAW_STATUS_COMPUTATION = 6,
  NAW_STATUS_OUT_OF_RANGE = 7,
  NAW_STATUS_PANIC = 8,
} NawStatus;

/**
 * A pass/fail certificate produced by one command.
 */
typedef struct NawCertificate NawCertificate;

/**
 * A finite group in multiplication-table form.
 */
typedef struct NawGroup NawGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *naw_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *naw_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void naw_string_free(char *s);

/**
 * Builds the group described by an expression such as "CP(E(2,0),A(4))".
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum NawStatus naw_group_new(const char *expr, struct NawGroup **out);

/**
 * Releases a group. NULL is ignored.
 *
 * # Safety
 * `g` must come from [`naw_group_new`] and not have been freed.
 */
void naw_group_free(struct NawGroup *g);

/**
 * |G|.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum NawStatus naw_group_order(const struct NawGroup *g, size_t *out);

/**
 * |Z(G)|.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum NawStatus naw_group_center_order(const struct NawGroup *g, size_t *out);

/**
 * Product of elements `a` and `b`, indexed 0..|G| with 0 the identity.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum NawStatus naw_group_mul(const struct NawGroup *g, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Order of element `a`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum NawStatus naw_group_element_order(const struct NawGroup *g, uint32_t a, uint64_t *out);

/**
 * Whether two groups are isomorphic, by exhaustive search.
 *
 * # Safety
 * `g` and `h` must be live handles; `out` must be writable.
 */
enum NawStatus naw_group_isomorphic(const struct NawGroup *g, const struct NawGroup *h, bool *out);

/**
 * Fewest k-th powers summing to −1 modulo q.
 *
 * # Safety
 * `out` must be writable.
 */
enum NawStatus naw_waring_min_powers(uint32_t k, uint64_t q, size_t *out);

/**
 * Runs a command-line invocation such as {"egroup", "--d", "3", "--j", "1"}
 * (without the program name) and returns its certificate. Errors inside the
 * command are reported in the certificate, not as a status.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out` must be writable.
 */
enum NawStatus naw_run(const char *const *argv, size_t argc, struct NawCertificate **out);

/**
 * Releases a certificate. NULL is ignored.
 *
 * # Safety
 * `c` must come from [`naw_run`] and not have been freed.
 */
void naw_certificate_free(struct NawCertificate *c);

/**
 * Process exit code the command line would use: 0, 1 or 2.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum NawStatus naw_certificate_exit_code(const struct NawCertificate *c, int32_t *out);

/**
 * Counts of passing, failing and inconclusive checks.
 *
 * # Safety
 * `c` must be a live handle; the three outputs must be writable.
 */
enum NawStatus naw_certificate_counts(const struct NawCertificate *c,
                                      size_t *pass,
                                      size_t *fail,
                                      size_t *inconclusive);

/**
 * The certificate as JSON, identical to the command-line output.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable. Free the string with
 * [`naw_string_free`].
 */
enum NawStatus naw_certificate_json(const struct NawCertificate *c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NAW_H */
