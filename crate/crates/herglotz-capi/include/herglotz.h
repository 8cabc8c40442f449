/* C interface for the herglotz crate. Generated by cbindgen; do not edit. */

#ifndef HERGLOTZ_H
#define HERGLOTZ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirrored in the C header.
 */
#define HERGLOTZ_OK 0

#define HERGLOTZ_NULL_POINTER 1

#define HERGLOTZ_INVALID_CONFIG 2

#define HERGLOTZ_DOMAIN_ERROR 3

#define HERGLOTZ_NUMERIC_ERROR 4

#define HERGLOTZ_BAD_ARGUMENT 5

#define HERGLOTZ_PANIC 6

/**
 * Opaque: a validated model plus its Herglotz function.
 */
typedef struct HerglotzModel HerglotzModel;

/**
 * Opaque: the atoms of one singular spectral sample.
 */
typedef struct HerglotzSampleHandle HerglotzSampleHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static name for a status code; never needs freeing.
 */
const char *herglotz_status_name(int32_t status);

/**
 * Library version; static, never freed.
 */
const char *herglotz_version(void);

/**
 * Parses a JSON model description (same schema as the CLI accepts) and
 * returns a new handle through `out`. Free with [`herglotz_model_free`].
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer.
 */
int32_t herglotz_model_parse_json(const char *json, struct HerglotzModel **out);

/**
 * Frees a model handle; a null pointer is a no-op.
 *
 * # Safety
 * `model` must come from [`herglotz_model_parse_json`] and not be freed
 * twice.
 */
void herglotz_model_free(struct HerglotzModel *model);

/**
 * Evaluates `h(z)` for `Im z > 0`.
 *
 * # Safety
 * `model` must be a live handle; `out_re`/`out_im` must be writable.
 */
int32_t herglotz_eval(const struct HerglotzModel *model,
                      double z_re,
                      double z_im,
                      double *out_re,
                      double *out_im);

/**
 * Evaluates `1/(r - h(z))` for `Im z > 0`.
 *
 * # Safety
 * As [`herglotz_eval`].
 */
int32_t herglotz_transform_eval(const struct HerglotzModel *model,
                                double r,
                                double z_re,
                                double z_im,
                                double *out_re,
                                double *out_im);

/**
 * Solves `h(lambda) = r`: the atoms of the singular measure of
 * `1/(r - h)`. The returned handle is freed with
 * [`herglotz_sample_free`].
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t herglotz_solve(const struct HerglotzModel *model,
                       double r,
                       struct HerglotzSampleHandle **out);

/**
 * Number of atoms in a sample; zero for a null handle.
 *
 * # Safety
 * `sample` must be a live handle or null.
 */
size_t herglotz_sample_len(const struct HerglotzSampleHandle *sample);

/**
 * Position of atom `index`.
 *
 * # Safety
 * `sample` must be a live handle; `out` writable.
 */
int32_t herglotz_sample_position(const struct HerglotzSampleHandle *sample,
                                 size_t index,
                                 double *out);

/**
 * Mass of atom `index`.
 *
 * # Safety
 * As [`herglotz_sample_position`].
 */
int32_t herglotz_sample_mass(const struct HerglotzSampleHandle *sample, size_t index, double *out);

/**
 * Frees a sample handle; a null pointer is a no-op.
 *
 * # Safety
 * `sample` must come from [`herglotz_solve`] and not be freed twice.
 */
void herglotz_sample_free(struct HerglotzSampleHandle *sample);

/**
 * The analytic averaged-density indicator at `lambda` (0 or 1); a
 * domain error when `lambda` lies in the closed support.
 *
 * # Safety
 * `model` must be a live handle; `out` writable.
 */
int32_t herglotz_oracle_density(const struct HerglotzModel *model, double lambda, double *out);

/**
 * Writes up to `cap` jump points into `buf` and the total count into
 * `out_len`. Call with `cap = 0` (and `buf` possibly null) to query the
 * count first.
 *
 * # Safety
 * `model` must be a live handle; `buf` must have room for `cap` values
 * when `cap > 0`; `out_len` must be writable.
 */
int32_t herglotz_jump_points(const struct HerglotzModel *model,
                             double *buf,
                             size_t cap,
                             size_t *out_len);

/**
 * The default verification window: one unit of slack around the extreme
 * jump points.
 *
 * # Safety
 * `model` must be a live handle; `out_lo`/`out_hi` writable.
 */
int32_t herglotz_default_window(const struct HerglotzModel *model, double *out_lo, double *out_hi);

/**
 * Averages the singular measures of `1/(r - h)` over `r` in `[0, 1]`
 * with `n_r` midpoint samples and writes the binned density (length
 * `n_bins`, bins half-open over `[lo, hi)`) into caller storage.
 * `backend` is 0 for root-finding, 1 for the secular solver.
 *
 * # Safety
 * `model` must be a live handle; `out_values` must have room for
 * `n_bins` values.
 */
int32_t herglotz_sweep(const struct HerglotzModel *model,
                       size_t n_r,
                       double lo,
                       double hi,
                       size_t n_bins,
                       int32_t backend,
                       double *out_values);

/**
 * Runs the full verification: sweep, comparison against the analytic
 * density and backend cross-check. Writes the three deviation metrics
 * and sets `out_pass` to 1 when all tolerances hold. A failing verdict
 * is still `HERGLOTZ_OK`; the status only reports execution problems.
 *
 * # Safety
 * `model` must be a live handle; every out pointer writable.
 */
int32_t herglotz_check(const struct HerglotzModel *model,
                       size_t n_r,
                       double lo,
                       double hi,
                       size_t n_bins,
                       int32_t backend,
                       double tol_sup,
                       double tol_l1,
                       double tol_mass,
                       double *out_sup,
                       double *out_l1,
                       double *out_mass,
                       int32_t *out_pass);

/**
 * Duplicates a status name into caller-owned memory, mainly so bindings
 * that cannot keep Rust statics alive have something to free; release
 * with [`herglotz_string_free`].
 */
char *herglotz_status_name_owned(int32_t status);

/**
 * Frees a string returned by [`herglotz_status_name_owned`].
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void herglotz_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERGLOTZ_H */
