#ifndef BOOLCUBE_H
#define BOOLCUBE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BcClass {
  BC_CLASS_MONOTONE = 0,
  BC_CLASS_SUBMODULAR = 1,
  BC_CLASS_SUBADDITIVE = 2,
  BC_CLASS_SELF_BOUNDING = 3,
  BC_CLASS_XOS = 4,
} BcClass;

typedef enum BcLearnMode {
  BC_LEARN_MODE_SUBMODULAR = 0,
  BC_LEARN_MODE_XOS = 1,
} BcLearnMode;

typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_ARGUMENT = 2,
  BC_STATUS_RESOURCE_LIMIT = 3,
  BC_STATUS_FAILURE = 4,
  BC_STATUS_PANIC = 5,
} BcStatus;

/**
 * A real-valued function on the cube.
 */
typedef struct BcFunction BcFunction;

/**
 * A learned hypothesis.
 */
typedef struct BcModel BcModel;

/**
 * Fourier coefficients of a function.
 */
typedef struct BcSpectrum BcSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *bc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bc_version(void);

/**
 * Builds a function from its `2^n` values, indexed by bitmask.
 *
 * # Safety
 * `values` must point to `len` readable doubles and `out` must be writable.
 */
enum BcStatus bc_function_new(size_t n, const double *values, size_t len, struct BcFunction **out);

/**
 * Builds a function from a JSON spec document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
enum BcStatus bc_function_from_spec(const char *json, struct BcFunction **out);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards. Null is ignored.
 */
void bc_function_free(struct BcFunction *f);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum BcStatus bc_function_dimension(const struct BcFunction *f, size_t *out);

/**
 * Copies the `2^n` values into `out`.
 *
 * # Safety
 * `f` must be a live handle and `out` must hold `len` doubles.
 */
enum BcStatus bc_function_values(const struct BcFunction *f, double *out, size_t len);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum BcStatus bc_function_transform(const struct BcFunction *f, struct BcSpectrum **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void bc_spectrum_free(struct BcSpectrum *s);

/**
 * Copies the `2^n` coefficients into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must hold `len` doubles.
 */
enum BcStatus bc_spectrum_coefficients(const struct BcSpectrum *s, double *out, size_t len);

/**
 * Copies the `n + 1` level weights into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must hold `len` doubles.
 */
enum BcStatus bc_spectrum_level_weights(const struct BcSpectrum *s, double *out, size_t len);

/**
 * Squared mass above level `d`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum BcStatus bc_spectrum_tail_weight(const struct BcSpectrum *s, size_t d, double *out);

/**
 * Smallest level whose tail is at most `eps^2`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum BcStatus bc_spectrum_l2_degree(const struct BcSpectrum *s, double eps, size_t *out);

/**
 * Tests class membership. `a` is used only by the self-bounding test.
 *
 * # Safety
 * `f` must be a live handle and `holds` writable.
 */
enum BcStatus bc_check_class(const struct BcFunction *f,
                             enum BcClass class_,
                             double a,
                             bool *holds);

/**
 * `Pr[h(x) != h(y)]` for a 0/1-valued function.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum BcStatus bc_noise_sensitivity(const struct BcFunction *f, double alpha, double *out);

/**
 * Learns `f` from random examples with default parameters and reports the
 * exact error of the hypothesis.
 *
 * # Safety
 * `f` must be a live handle; `model` and `error` must be writable.
 */
enum BcStatus bc_learn(const struct BcFunction *f,
                       double eps,
                       uint64_t seed,
                       enum BcLearnMode mode,
                       struct BcModel **model,
                       double *error);

/**
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum BcStatus bc_model_predict(const struct BcModel *model, size_t x, double *out);

/**
 * # Safety
 * `model` must come from this library and not be used afterwards. Null is ignored.
 */
void bc_model_free(struct BcModel *model);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOOLCUBE_H */
