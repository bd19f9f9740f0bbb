#ifndef DSIM_H
#define DSIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every function.
 */
typedef enum DsimStatus {
  DSIM_STATUS_OK = 0,
  DSIM_STATUS_NULL_POINTER = 1,
  DSIM_STATUS_INVALID_ARGUMENT = 2,
  DSIM_STATUS_UNKNOWN_DISTRIBUTION = 3,
  DSIM_STATUS_SCHEME_MISMATCH = 4,
  DSIM_STATUS_BAD_HEADER = 5,
  DSIM_STATUS_TRUNCATED = 6,
  DSIM_STATUS_CORRUPT = 7,
  DSIM_STATUS_SAMPLER = 8,
  DSIM_STATUS_PANIC = 9,
} DsimStatus;

/**
 * An owned byte buffer holding a container.
 */
typedef struct DsimBuffer DsimBuffer;

/**
 * A parsed distribution.
 */
typedef struct DsimDistribution DsimDistribution;

/**
 * Decoded samples. Integer containers yield integers, the others reals.
 */
typedef struct DsimSamples DsimSamples;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *dsim_last_error(void);

/**
 * Parses a spec such as `"geometric:p=0.7"` or `"pareto_flat:c=2,lambda=2"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum DsimStatus dsim_distribution_parse(const char *spec, struct DsimDistribution **out);

/**
 * # Safety
 * `dist` must come from [`dsim_distribution_parse`] and not be freed twice.
 */
void dsim_distribution_free(struct DsimDistribution *dist);

/**
 * Draws `n` samples with `seed` and encodes them into a container.
 *
 * `scheme` is the container scheme byte: 1 integer, 2 unit interval, 3 half-line.
 *
 * # Safety
 * `dist` must be a live handle and `out` a valid pointer.
 */
enum DsimStatus dsim_encode(const struct DsimDistribution *dist,
                            uint8_t scheme,
                            uint64_t n,
                            uint64_t seed,
                            struct DsimBuffer **out);

/**
 * Pointer to the buffer contents; its length is written to `len`.
 *
 * # Safety
 * `buf` must be a live handle; `len` a valid pointer.
 */
const uint8_t *dsim_buffer_data(const struct DsimBuffer *buf, size_t *len);

/**
 * # Safety
 * `buf` must come from [`dsim_encode`] and not be freed twice.
 */
void dsim_buffer_free(struct DsimBuffer *buf);

/**
 * Decodes a container of any scheme with decoder randomness `seed`.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes; `out` must be valid.
 */
enum DsimStatus dsim_decode(const uint8_t *bytes,
                            size_t len,
                            uint64_t seed,
                            struct DsimSamples **out);

/**
 * Scheme byte of the decoded container, or 0 for a null handle.
 *
 * # Safety
 * `samples` must be null or a live handle.
 */
uint8_t dsim_samples_scheme(const struct DsimSamples *samples);

/**
 * Number of decoded samples, or 0 for a null handle.
 *
 * # Safety
 * `samples` must be null or a live handle.
 */
size_t dsim_samples_len(const struct DsimSamples *samples);

/**
 * Copies up to `cap` integer samples into `dst` and writes the count to `written`.
 *
 * # Safety
 * `samples` must be live, `dst` writable for `cap` values, `written` valid.
 */
enum DsimStatus dsim_samples_copy_u64(const struct DsimSamples *samples,
                                      uint64_t *dst,
                                      size_t cap,
                                      size_t *written);

/**
 * Copies up to `cap` real samples into `dst` and writes the count to `written`.
 *
 * # Safety
 * `samples` must be live, `dst` writable for `cap` values, `written` valid.
 */
enum DsimStatus dsim_samples_copy_f64(const struct DsimSamples *samples,
                                      double *dst,
                                      size_t cap,
                                      size_t *written);

/**
 * # Safety
 * `samples` must come from [`dsim_decode`] and not be freed twice.
 */
void dsim_samples_free(struct DsimSamples *samples);

/**
 * Closed-form expected-length bound number `kind`: 1 integer power tail,
 * 2 integer exponential tail, 3 unit interval, 4 half-line. Unused parameters
 * are ignored.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DsimStatus dsim_bound(uint8_t kind,
                           double c,
                           double lambda,
                           double f0,
                           uint64_t n,
                           double *out);

/**
 * Elias gamma codeword length of `z >= 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DsimStatus dsim_gamma_length(uint64_t z, uint64_t *out);

/**
 * Exact expected unit-interval length over rectangles with depth `<= k_max`.
 *
 * # Safety
 * `dist` must be a live handle and `out` valid.
 */
enum DsimStatus dsim_exact_length_unit(const struct DsimDistribution *dist,
                                       uint64_t n,
                                       uint32_t k_max,
                                       double *out);

/**
 * Monte-Carlo mean payload length and its standard error over `trials` encodes.
 *
 * # Safety
 * `dist` must be a live handle; `mean` and `std_error` valid pointers.
 */
enum DsimStatus dsim_empirical_length(const struct DsimDistribution *dist,
                                      uint8_t scheme,
                                      uint64_t n,
                                      uint64_t trials,
                                      uint64_t seed,
                                      double *mean,
                                      double *std_error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DSIM_H */
