#ifndef VREGROWTH_H
#define VREGROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum VgStatus {
  VG_STATUS_OK = 0,
  /*
   A required pointer argument was NULL.
   */
  VG_STATUS_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  VG_STATUS_INVALID_UTF8 = 2,
  /*
   Invalid configuration or argument value.
   */
  VG_STATUS_CONFIG_ERROR = 3,
  /*
   Input data failed validation.
   */
  VG_STATUS_DATA_ERROR = 4,
  /*
   Numeric or model failure.
   */
  VG_STATUS_MODEL_ERROR = 5,
  /*
   Index outside the valid range.
   */
  VG_STATUS_OUT_OF_RANGE = 6,
  /*
   The library panicked; this is a bug.
   */
  VG_STATUS_PANIC = 7,
} VgStatus;

typedef struct VgExponentialFit VgExponentialFit;

typedef struct VgReport VgReport;

typedef struct VgSeries VgSeries;

/*
 Parameters of an exponential fit `value(t) = exp(ln_intercept + ln_slope * (t - reference_year))`.
 */
typedef struct VgFitParams {
  double reference_year;
  double ln_intercept;
  /*
   Continuous growth rate per year.
   */
  double ln_slope;
  double r_squared_logspace;
  double rmse_logspace;
  double window_start;
  double window_end;
  size_t n_points;
} VgFitParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread; empty after a success.
 The pointer stays valid until the next library call on the same thread.
 */
const char *vg_last_error_message(void);

/*
 Static description of a status code.
 */
const char *vg_status_name(enum VgStatus status);

/*
 Releases a string returned by the library.

 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void vg_string_free(char *s);

/*
 Parses a series file (header lines declaring kind and unit, then
 `year,value` rows).

 # Safety
 `source` must be a NUL-terminated string; `out` must be writable.
 */
enum VgStatus vg_series_parse(const char *source, struct VgSeries **out);

/*
 Loads a dataset shipped with the library, e.g. `"pv_installed"`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum VgStatus vg_series_bundled(const char *name, struct VgSeries **out);

/*
 Number of samples; 0 for NULL.

 # Safety
 `series` must be NULL or a live handle.
 */
size_t vg_series_len(const struct VgSeries *series);

/*
 Sample `index` in year order.

 # Safety
 `series` must be a live handle; `year` and `value` must be writable.
 */
enum VgStatus vg_series_sample(const struct VgSeries *series,
                               size_t index,
                               double *year,
                               double *value);

/*
 # Safety
 `series` must be NULL or a handle not yet freed.
 */
void vg_series_free(struct VgSeries *series);

/*
 Log-space least-squares exponential fit over `[start, end]`; pass NaN
 for an open bound.

 # Safety
 `series` must be a live handle; `out` must be writable.
 */
enum VgStatus vg_fit_exponential(const struct VgSeries *series,
                                 double start,
                                 double end,
                                 struct VgExponentialFit **out);

/*
 # Safety
 `fit` must be a live handle; `out` must be writable.
 */
enum VgStatus vg_fit_params(const struct VgExponentialFit *fit, struct VgFitParams *out);

/*
 Model value at `year`. `horizon_warning` (may be NULL) is set when the
 year lies far beyond the fit window.

 # Safety
 `fit` must be a live handle; `value` must be writable.
 */
enum VgStatus vg_fit_extrapolate(const struct VgExponentialFit *fit,
                                 double year,
                                 double *value,
                                 bool *horizon_warning);

/*
 # Safety
 `fit` must be a live handle; `out` must be writable.
 */
enum VgStatus vg_fit_doubling_time(const struct VgExponentialFit *fit, double *out);

/*
 # Safety
 `fit` must be NULL or a handle not yet freed.
 */
void vg_fit_free(struct VgExponentialFit *fit);

/*
 Annual generation (TWh/yr) of `power_gw` at the capacity factor.

 # Safety
 `out` must be writable.
 */
enum VgStatus vg_generation_capability(double power_gw, double capacity_factor, double *out);

/*
 PV land area (km2) to generate `demand` TWh/yr.

 # Safety
 `out` must be writable.
 */
enum VgStatus vg_pv_area_required(double demand,
                                  double density,
                                  double capacity_factor,
                                  double *out);

/*
 Value of a registered constant, e.g. `"cf_pv"`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum VgStatus vg_constant_value(const char *name, double *out);

/*
 Runs a full scenario. `config_toml` may be NULL for the defaults;
 relative dataset paths resolve against the working directory.

 # Safety
 `config_toml` must be NULL or a NUL-terminated string; `out` must be writable.
 */
enum VgStatus vg_report_run(const char *config_toml, struct VgReport **out);

/*
 Report as a JSON document.

 # Safety
 `report` must be a live handle; `out` must be writable.
 */
enum VgStatus vg_report_json(const struct VgReport *report, char **out);

/*
 Discrepancy table as CSV.

 # Safety
 `report` must be a live handle; `out` must be writable.
 */
enum VgStatus vg_report_discrepancies_csv(const struct VgReport *report, char **out);

/*
 One figure (`"fig1"` to `"fig8"`, `"appfig1"`, `"appfig6"`) as SVG.

 # Safety
 `report` must be a live handle; `id` a NUL-terminated string; `out` writable.
 */
enum VgStatus vg_report_figure_svg(const struct VgReport *report, const char *id, char **out);

/*
 # Safety
 `report` must be NULL or a handle not yet freed.
 */
void vg_report_free(struct VgReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VREGROWTH_H */
