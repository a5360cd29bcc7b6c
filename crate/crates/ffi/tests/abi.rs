use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vregrowth_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vg_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    vg_string_free(p);
    s
}

/// Plain log-space least squares, written out independently of the library.
fn ols_log(points: &[(f64, f64)], reference: f64) -> (f64, f64) {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0 - reference).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

fn bundled(name: &str) -> *mut VgSeries {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { vg_series_bundled(cstr(name).as_ptr(), &mut s) },
        VgStatus::Ok
    );
    assert!(!s.is_null());
    s
}

fn samples(s: *const VgSeries) -> Vec<(f64, f64)> {
    let n = unsafe { vg_series_len(s) };
    (0..n)
        .map(|i| {
            let (mut y, mut v) = (0.0, 0.0);
            assert_eq!(
                unsafe { vg_series_sample(s, i, &mut y, &mut v) },
                VgStatus::Ok
            );
            (y, v)
        })
        .collect()
}

#[test]
fn fit_matches_independent_least_squares() {
    let s = bundled("pv_installed");
    let pts: Vec<_> = samples(s).into_iter().filter(|p| p.0 >= 2000.0).collect();
    let (a, b) = ols_log(&pts, pts[0].0);

    let mut fit = ptr::null_mut();
    assert_eq!(
        unsafe { vg_fit_exponential(s, 2000.0, f64::NAN, &mut fit) },
        VgStatus::Ok
    );
    let mut p = VgFitParams::default();
    assert_eq!(unsafe { vg_fit_params(fit, &mut p) }, VgStatus::Ok);
    assert_eq!(p.reference_year, 2000.0);
    assert_eq!(p.n_points, pts.len());
    assert!((p.ln_intercept - a).abs() < 1e-9);
    assert!((p.ln_slope - b).abs() < 1e-12);

    let mut td = 0.0;
    assert_eq!(unsafe { vg_fit_doubling_time(fit, &mut td) }, VgStatus::Ok);
    assert!((td - std::f64::consts::LN_2 / b).abs() < 1e-12);

    let (mut v, mut warn) = (0.0, true);
    assert_eq!(
        unsafe { vg_fit_extrapolate(fit, 2030.0, &mut v, &mut warn) },
        VgStatus::Ok
    );
    assert!((v - (a + b * 30.0).exp()).abs() / v < 1e-12);
    assert!(!warn);
    let last = pts.last().unwrap().0;
    assert_eq!(
        unsafe { vg_fit_extrapolate(fit, last + 16.0, &mut v, &mut warn) },
        VgStatus::Ok
    );
    assert!(warn, "far extrapolation is flagged");

    unsafe {
        vg_fit_free(fit);
        vg_series_free(s);
    }
}

#[test]
fn parse_round_trip() {
    let text = "# technology: demo\n# kind: installed_power\n# unit: GW\nyear,value\n2001,2\n2000,1\n2002,4\n";
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { vg_series_parse(cstr(text).as_ptr(), &mut s) },
        VgStatus::Ok
    );
    assert_eq!(
        samples(s),
        vec![(2000.0, 1.0), (2001.0, 2.0), (2002.0, 4.0)]
    );

    let (mut y, mut v) = (-1.0, -1.0);
    assert_eq!(
        unsafe { vg_series_sample(s, 3, &mut y, &mut v) },
        VgStatus::OutOfRange
    );
    assert_eq!((y, v), (-1.0, -1.0));
    unsafe { vg_series_free(s) };
}

#[test]
fn bad_inputs_map_to_status_codes() {
    let mut s: *mut VgSeries = ptr::null_mut();
    assert_eq!(
        unsafe { vg_series_parse(ptr::null(), &mut s) },
        VgStatus::NullArgument
    );
    assert!(s.is_null());
    assert!(last_error().contains("source"));

    let bad = [0x66u8, 0xff, 0xfe, 0];
    assert_eq!(
        unsafe { vg_series_bundled(bad.as_ptr().cast(), &mut s) },
        VgStatus::InvalidUtf8
    );

    assert_eq!(
        unsafe { vg_series_bundled(cstr("no_such_series").as_ptr(), &mut s) },
        VgStatus::DataError
    );
    assert!(s.is_null());

    let dup = "# technology: d\n# kind: installed_power\n# unit: GW\nyear,value\n2000,1\n2000,2\n";
    assert_eq!(
        unsafe { vg_series_parse(cstr(dup).as_ptr(), &mut s) },
        VgStatus::DataError
    );

    let mut out = 7.0;
    assert_eq!(
        unsafe { vg_generation_capability(1.0, 1.2, &mut out) },
        VgStatus::ModelError
    );
    assert_eq!(out, 7.0);
    assert_eq!(
        unsafe { vg_constant_value(cstr("not_a_constant").as_ptr(), &mut out) },
        VgStatus::DataError
    );
    assert_eq!(unsafe { vg_series_len(ptr::null()) }, 0);

    // success clears the message
    assert_eq!(
        unsafe { vg_generation_capability(1.0, 0.5, &mut out) },
        VgStatus::Ok
    );
    assert_eq!(last_error(), "");
}

#[test]
fn fit_before_window_is_a_model_error() {
    let s = bundled("pv_installed");
    let mut fit = ptr::null_mut();
    assert_eq!(
        unsafe { vg_fit_exponential(s, 2000.0, f64::NAN, &mut fit) },
        VgStatus::Ok
    );
    let mut v = -1.0;
    assert_eq!(
        unsafe { vg_fit_extrapolate(fit, 1990.0, &mut v, ptr::null_mut()) },
        VgStatus::ModelError
    );
    assert_eq!(v, -1.0);

    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { vg_fit_exponential(s, 2100.0, f64::NAN, &mut none) },
        VgStatus::ModelError
    );
    assert!(none.is_null());
    unsafe {
        vg_fit_free(fit);
        vg_series_free(s);
    }
}

#[test]
fn scalar_helpers() {
    let mut g = 0.0;
    assert_eq!(
        unsafe { vg_generation_capability(1000.0, 0.256, &mut g) },
        VgStatus::Ok
    );
    assert!((g - 1000.0 * 0.256 * 8760.0 / 1000.0).abs() < 1e-9);

    let mut cf = 0.0;
    assert_eq!(
        unsafe { vg_constant_value(cstr("cf_pv").as_ptr(), &mut cf) },
        VgStatus::Ok
    );
    assert_eq!(cf, 0.256);

    let mut area = 0.0;
    assert_eq!(
        unsafe { vg_pv_area_required(35_000.0, 42.8, 0.256, &mut area) },
        VgStatus::Ok
    );
    assert!((area - 35_000.0e6 / (42.8 * 0.256 * 8760.0)).abs() < 1e-6);
    assert_eq!(
        unsafe { vg_pv_area_required(35_000.0, 0.0, 0.256, &mut area) },
        VgStatus::ModelError
    );
}

#[test]
fn status_names_are_static_strings() {
    let name = unsafe { CStr::from_ptr(vg_status_name(VgStatus::OutOfRange)) };
    assert_eq!(name.to_str().unwrap(), "index out of range");
}

#[test]
fn report_outputs() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { vg_report_run(ptr::null(), &mut r) }, VgStatus::Ok);

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { vg_report_json(r, &mut p) }, VgStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&unsafe { take_string(p) }).unwrap();
    assert_eq!(json["schema"], "vregrowth-report/1");

    assert_eq!(
        unsafe { vg_report_discrepancies_csv(r, &mut p) },
        VgStatus::Ok
    );
    let csv = unsafe { take_string(p) };
    assert!(csv.lines().count() > 1);

    assert_eq!(
        unsafe { vg_report_figure_svg(r, cstr("fig5").as_ptr(), &mut p) },
        VgStatus::Ok
    );
    assert!(unsafe { take_string(p) }.contains("<svg xmlns"));

    let mut untouched: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { vg_report_figure_svg(r, cstr("fig99").as_ptr(), &mut untouched) },
        VgStatus::ConfigError
    );
    assert!(untouched.is_null());
    assert!(last_error().contains("fig5"), "message lists the valid ids");
    unsafe { vg_report_free(r) };
}

#[test]
fn report_config_errors() {
    let mut r = ptr::null_mut();
    let toml = cstr("horizon = 2050\nunknown_key = 1\n");
    assert_eq!(
        unsafe { vg_report_run(toml.as_ptr(), &mut r) },
        VgStatus::ConfigError
    );
    assert!(r.is_null());

    let toml = cstr("horizon = 2000\n");
    assert_eq!(
        unsafe { vg_report_run(toml.as_ptr(), &mut r) },
        VgStatus::ConfigError
    );
    assert!(r.is_null());
}

#[test]
fn handles_are_shareable_across_threads() {
    struct Send(*mut VgExponentialFit);
    unsafe impl std::marker::Send for Send {}
    unsafe impl Sync for Send {}

    let s = bundled("wind_installed");
    let mut fit = ptr::null_mut();
    assert_eq!(
        unsafe { vg_fit_exponential(s, f64::NAN, f64::NAN, &mut fit) },
        VgStatus::Ok
    );
    let shared = Send(fit);
    let values: Vec<f64> = std::thread::scope(|sc| {
        (0..4)
            .map(|_| {
                let h = &shared;
                sc.spawn(move || {
                    let mut v = 0.0;
                    assert_eq!(
                        unsafe { vg_fit_extrapolate(h.0, 2030.0, &mut v, ptr::null_mut()) },
                        VgStatus::Ok
                    );
                    v
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .map(|h| h.join().unwrap())
            .collect()
    });
    assert!(values.windows(2).all(|w| w[0] == w[1]));
    unsafe {
        vg_fit_free(fit);
        vg_series_free(s);
        vg_fit_free(ptr::null_mut());
        vg_series_free(ptr::null_mut());
        vg_report_free(ptr::null_mut());
        vg_string_free(ptr::null_mut());
    }
}
