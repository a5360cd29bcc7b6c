//! C ABI over the `vregrowth` engine.
//!
//! Conventions:
//! - every fallible function returns a [`VgStatus`] and writes its result
//!   through an out pointer; on failure the out pointer is left untouched
//!   and [`vg_last_error_message`] describes the error;
//! - handles (`VgSeries`, `VgExponentialFit`, `VgReport`) are opaque and
//!   released with their `*_free` function; freeing NULL is a no-op;
//! - strings returned by the library are NUL-terminated UTF-8 and released
//!   with [`vg_string_free`].
//!
//! Handles are immutable after creation and may be shared between threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vregrowth::corpus::{self, CapacitySeries};
use vregrowth::growthfit::{self, ExponentialFit, YearWindow};
use vregrowth::report::{self, ScenarioConfig, ScenarioReport};
use vregrowth::{Error, ErrorClass};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VgStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Invalid configuration or argument value.
    ConfigError = 3,
    /// Input data failed validation.
    DataError = 4,
    /// Numeric or model failure.
    ModelError = 5,
    /// Index outside the valid range.
    OutOfRange = 6,
    /// The library panicked; this is a bug.
    Panic = 7,
}

pub struct VgSeries(CapacitySeries);

pub struct VgExponentialFit(ExponentialFit);

pub struct VgReport(ScenarioReport);

/// Parameters of an exponential fit `value(t) = exp(ln_intercept + ln_slope * (t - reference_year))`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VgFitParams {
    pub reference_year: f64,
    pub ln_intercept: f64,
    /// Continuous growth rate per year.
    pub ln_slope: f64,
    pub r_squared_logspace: f64,
    pub rmse_logspace: f64,
    pub window_start: f64,
    pub window_end: f64,
    pub n_points: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> VgStatus {
    match e.class() {
        ErrorClass::Config => VgStatus::ConfigError,
        ErrorClass::Data => VgStatus::DataError,
        ErrorClass::Model => VgStatus::ModelError,
    }
}

enum Failure {
    Status(VgStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> VgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VgStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            VgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(VgStatus::NullArgument, format!("`{what}` is NULL"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::Status(
            VgStatus::InvalidUtf8,
            format!("`{what}` is not valid UTF-8"),
        )
    })
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s)
        .map_err(|_| Failure::Status(VgStatus::DataError, "output contains NUL".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn open(v: f64) -> Option<f64> {
    if v.is_nan() {
        None
    } else {
        Some(v)
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn vg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn vg_status_name(status: VgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        VgStatus::Ok => c"ok",
        VgStatus::NullArgument => c"null argument",
        VgStatus::InvalidUtf8 => c"invalid utf-8",
        VgStatus::ConfigError => c"configuration error",
        VgStatus::DataError => c"data error",
        VgStatus::ModelError => c"model error",
        VgStatus::OutOfRange => c"index out of range",
        VgStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a series file (header lines declaring kind and unit, then
/// `year,value` rows).
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_series_parse(
    source: *const c_char,
    out: *mut *mut VgSeries,
) -> VgStatus {
    guard(|| {
        let s = CapacitySeries::parse(text(source, "source")?)?;
        write(out, Box::into_raw(Box::new(VgSeries(s))), "out")
    })
}

/// Loads a dataset shipped with the library, e.g. `"pv_installed"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_series_bundled(
    name: *const c_char,
    out: *mut *mut VgSeries,
) -> VgStatus {
    guard(|| {
        let s = corpus::bundled(text(name, "name")?)?;
        write(out, Box::into_raw(Box::new(VgSeries(s))), "out")
    })
}

/// Number of samples; 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vg_series_len(series: *const VgSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.len())
}

/// Sample `index` in year order.
///
/// # Safety
/// `series` must be a live handle; `year` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_series_sample(
    series: *const VgSeries,
    index: usize,
    year: *mut f64,
    value: *mut f64,
) -> VgStatus {
    guard(|| {
        let s = borrow(series, "series")?;
        let sample = s.0.samples().get(index).ok_or_else(|| {
            Failure::Status(
                VgStatus::OutOfRange,
                format!("index {index} outside 0..{}", s.0.len()),
            )
        })?;
        if value.is_null() {
            return Err(null("value"));
        }
        write(year, sample.year, "year")?;
        write(value, sample.value, "value")
    })
}

/// # Safety
/// `series` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vg_series_free(series: *mut VgSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Log-space least-squares exponential fit over `[start, end]`; pass NaN
/// for an open bound.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_fit_exponential(
    series: *const VgSeries,
    start: f64,
    end: f64,
    out: *mut *mut VgExponentialFit,
) -> VgStatus {
    guard(|| {
        let s = borrow(series, "series")?;
        let window = YearWindow {
            start: open(start),
            end: open(end),
        };
        let fit = growthfit::fit_exponential(&s.0, window)?;
        write(out, Box::into_raw(Box::new(VgExponentialFit(fit))), "out")
    })
}

/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_fit_params(
    fit: *const VgExponentialFit,
    out: *mut VgFitParams,
) -> VgStatus {
    guard(|| {
        let f = &borrow(fit, "fit")?.0;
        let p = VgFitParams {
            reference_year: f.reference_year,
            ln_intercept: f.ln_intercept,
            ln_slope: f.ln_slope,
            r_squared_logspace: f.r_squared_logspace,
            rmse_logspace: f.rmse_logspace,
            window_start: f.fit_window.0,
            window_end: f.fit_window.1,
            n_points: f.n_points,
        };
        write(out, p, "out")
    })
}

/// Model value at `year`. `horizon_warning` (may be NULL) is set when the
/// year lies far beyond the fit window.
///
/// # Safety
/// `fit` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_fit_extrapolate(
    fit: *const VgExponentialFit,
    year: f64,
    value: *mut f64,
    horizon_warning: *mut bool,
) -> VgStatus {
    guard(|| {
        let e = growthfit::extrapolate(&borrow(fit, "fit")?.0, year)?;
        write(value, e.value, "value")?;
        if !horizon_warning.is_null() {
            horizon_warning.write(e.horizon_warning);
        }
        Ok(())
    })
}

/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_fit_doubling_time(
    fit: *const VgExponentialFit,
    out: *mut f64,
) -> VgStatus {
    guard(|| {
        write(
            out,
            growthfit::doubling_time(&borrow(fit, "fit")?.0)?,
            "out",
        )
    })
}

/// # Safety
/// `fit` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vg_fit_free(fit: *mut VgExponentialFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// Annual generation (TWh/yr) of `power_gw` at the capacity factor.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_generation_capability(
    power_gw: f64,
    capacity_factor: f64,
    out: *mut f64,
) -> VgStatus {
    guard(|| {
        write(
            out,
            vregrowth::genconvert::generation_capability(power_gw, capacity_factor)?,
            "out",
        )
    })
}

/// PV land area (km2) to generate `demand` TWh/yr.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_pv_area_required(
    demand: f64,
    density: f64,
    capacity_factor: f64,
    out: *mut f64,
) -> VgStatus {
    guard(|| {
        write(
            out,
            vregrowth::resourcebudget::pv_area_required(demand, density, capacity_factor)?,
            "out",
        )
    })
}

/// Value of a registered constant, e.g. `"cf_pv"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_constant_value(name: *const c_char, out: *mut f64) -> VgStatus {
    guard(|| write(out, corpus::get_constant(text(name, "name")?)?.value, "out"))
}

/// Runs a full scenario. `config_toml` may be NULL for the defaults;
/// relative dataset paths resolve against the working directory.
///
/// # Safety
/// `config_toml` must be NULL or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_report_run(
    config_toml: *const c_char,
    out: *mut *mut VgReport,
) -> VgStatus {
    guard(|| {
        let config = if config_toml.is_null() {
            ScenarioConfig::default()
        } else {
            ScenarioConfig::from_toml(text(config_toml, "config_toml")?)?
        };
        let r = report::run_scenario(&config)?;
        write(out, Box::into_raw(Box::new(VgReport(r))), "out")
    })
}

/// Report as a JSON document.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_report_json(
    report: *const VgReport,
    out: *mut *mut c_char,
) -> VgStatus {
    guard(|| write_string(out, borrow(report, "report")?.0.to_json()))
}

/// Discrepancy table as CSV.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vg_report_discrepancies_csv(
    report: *const VgReport,
    out: *mut *mut c_char,
) -> VgStatus {
    guard(|| {
        write_string(
            out,
            report::emit_discrepancies(&borrow(report, "report")?.0.discrepancies)?,
        )
    })
}

/// One figure (`"fig1"` to `"fig8"`, `"appfig1"`, `"appfig6"`) as SVG.
///
/// # Safety
/// `report` must be a live handle; `id` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vg_report_figure_svg(
    report: *const VgReport,
    id: *const c_char,
    out: *mut *mut c_char,
) -> VgStatus {
    guard(|| {
        let r = borrow(report, "report")?;
        write_string(out, report::emit_figure(&r.0, text(id, "id")?)?)
    })
}

/// # Safety
/// `report` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vg_report_free(report: *mut VgReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
