#ifndef ROBCERT_H
#define ROBCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RobcertStatus {
  ROBCERT_STATUS_OK = 0,
  ROBCERT_STATUS_NULL_POINTER = 1,
  /**
   * Unparsable text, bad shape or a value that cannot be represented.
   */
  ROBCERT_STATUS_INVALID_INPUT = 2,
  ROBCERT_STATUS_ASYMMETRIC = 3,
  /**
   * The certificate does not fit the request, e.g. asking a triple of an
   * ordering.
   */
  ROBCERT_STATUS_WRONG_KIND = 4,
  ROBCERT_STATUS_BUFFER_TOO_SMALL = 5,
  ROBCERT_STATUS_INTERNAL = 6,
} RobcertStatus;

/**
 * Opaque certificate: a Robinson ordering or a weighted asteroidal triple.
 */
typedef struct RobcertCertificate RobcertCertificate;

/**
 * Opaque symmetric matrix.
 */
typedef struct RobcertMatrix RobcertMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a
 * successful one. Valid until the next call into this library on the same
 * thread; do not free it.
 */
const char *robcert_last_error_message(void);

/**
 * Builds a matrix labelled `0..n` from `n * n` row-major integers. The
 * diagonal is ignored; the rest must be symmetric.
 *
 * # Safety
 * `entries` must point to `n * n` readable values and `out` must be a
 * valid pointer.
 */
enum RobcertStatus robcert_matrix_from_i64(size_t n,
                                           const int64_t *entries,
                                           struct RobcertMatrix **out);

/**
 * Parses the text matrix format (`n` or `lower n` header, then rows of
 * exact decimals or fractions).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum RobcertStatus robcert_matrix_from_text(const char *text_in, struct RobcertMatrix **out);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live matrix handle.
 */
size_t robcert_matrix_size(const struct RobcertMatrix *m);

/**
 * # Safety
 * `m` must be null or a matrix handle not yet freed.
 */
void robcert_matrix_free(struct RobcertMatrix *m);

/**
 * Decides whether `m` is Robinsonian and returns the certificate.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a valid pointer.
 */
enum RobcertStatus robcert_certify(const struct RobcertMatrix *m, struct RobcertCertificate **out);

/**
 * Number of weighted asteroidal triples of `m`.
 *
 * # Safety
 * `m` must be a live matrix handle and `count` a valid pointer.
 */
enum RobcertStatus robcert_count_wats(const struct RobcertMatrix *m, size_t *count);

/**
 * # Safety
 * `c` must be null or a certificate handle not yet freed.
 */
void robcert_certificate_free(struct RobcertCertificate *c);

/**
 * Whether the certificate is a Robinson ordering. False for null.
 *
 * # Safety
 * `c` must be null or a live certificate handle.
 */
bool robcert_certificate_is_robinsonian(const struct RobcertCertificate *c);

/**
 * Copies the ordering into `labels`. `len` always receives its length, so
 * a first call with `capacity = 0` sizes the buffer.
 *
 * # Safety
 * `c` must be a live certificate handle, `len` a valid pointer and
 * `labels` valid for `capacity` writes (it may be null when `capacity` is 0).
 */
enum RobcertStatus robcert_certificate_ordering(const struct RobcertCertificate *c,
                                                size_t *labels,
                                                size_t capacity,
                                                size_t *len);

/**
 * Writes the three elements of a weighted asteroidal triple.
 *
 * # Safety
 * `c` must be a live certificate handle and `triple` valid for 3 writes.
 */
enum RobcertStatus robcert_certificate_triple(const struct RobcertCertificate *c, size_t *triple);

/**
 * Checks the certificate against `m` without trusting how it was made.
 *
 * # Safety
 * `c` and `m` must be live handles and `valid` a valid pointer.
 */
enum RobcertStatus robcert_certificate_verify(const struct RobcertCertificate *c,
                                              const struct RobcertMatrix *m,
                                              bool *valid);

/**
 * Parses a certificate in the text form or as JSON.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum RobcertStatus robcert_certificate_from_text(const char *text_in,
                                                 struct RobcertCertificate **out);

/**
 * Line-oriented text form, as printed by `robcert certify`.
 *
 * # Safety
 * `c` must be a live certificate handle and `out` a valid pointer.
 */
enum RobcertStatus robcert_certificate_to_text(const struct RobcertCertificate *c, char **out);

/**
 * JSON document; `verified` is set only when `m` is given and the
 * certificate checks against it.
 *
 * # Safety
 * `c` must be a live certificate handle, `m` null or a live matrix handle,
 * and `out` a valid pointer.
 */
enum RobcertStatus robcert_certificate_to_json(const struct RobcertCertificate *c,
                                               const struct RobcertMatrix *m,
                                               char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void robcert_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROBCERT_H */
