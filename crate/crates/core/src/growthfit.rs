//! Growth models fitted to yearly series: exponential (ordinary least
//! squares on log values), polynomial, and exponential with a single
//! changepoint.

use serde::Serialize;

use crate::corpus::{CapacitySeries, Sample};
use crate::error::{Error, Result};
use crate::regression::{eval_polynomial, fit_line, fit_polynomial as poly_lsq};

/// Years past the end of the data after which extrapolations are flagged.
pub const HORIZON_WARNING_YEARS: f64 = 15.0;

/// Default improvement ratio above which a changepoint counts as a regime change.
pub const DEFAULT_CHANGEPOINT_THRESHOLD: f64 = 0.5;

/// Optional year bounds, both inclusive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct YearWindow {
    pub start: Option<f64>,
    pub end: Option<f64>,
}

impl YearWindow {
    pub const FULL: YearWindow = YearWindow {
        start: None,
        end: None,
    };

    pub fn new(start: f64, end: f64) -> Self {
        YearWindow {
            start: Some(start),
            end: Some(end),
        }
    }

    pub fn starting(start: f64) -> Self {
        YearWindow {
            start: Some(start),
            end: None,
        }
    }

    fn select(&self, series: &CapacitySeries) -> Vec<Sample> {
        series.window(self.start, self.end)
    }
}

/// Anything that can be evaluated at a year and knows the data span it was
/// fitted on.
pub trait Model {
    fn value_at(&self, year: f64) -> f64;
    /// First and last sample year used by the fit.
    fn window(&self) -> (f64, f64);
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentialFit {
    pub reference_year: f64,
    /// ln of the model value at `reference_year`.
    pub ln_intercept: f64,
    /// Continuous growth rate per year.
    pub ln_slope: f64,
    pub r_squared_logspace: f64,
    pub rmse_logspace: f64,
    pub fit_window: (f64, f64),
    pub n_points: usize,
    /// Sign of each log residual in year order ('+' above the line).
    pub residual_signs: String,
}

impl ExponentialFit {
    /// Model with known parameters, as if fitted exactly on `window`.
    pub fn from_parameters(
        reference_year: f64,
        value_at_reference: f64,
        ln_slope: f64,
        window_end: f64,
    ) -> Self {
        ExponentialFit {
            reference_year,
            ln_intercept: value_at_reference.ln(),
            ln_slope,
            r_squared_logspace: 1.0,
            rmse_logspace: 0.0,
            fit_window: (reference_year, window_end),
            n_points: 0,
            residual_signs: String::new(),
        }
    }

    /// Year at which the model reaches `value`.
    pub fn year_of_value(&self, value: f64) -> f64 {
        self.reference_year + (value.ln() - self.ln_intercept) / self.ln_slope
    }
}

impl Model for ExponentialFit {
    fn value_at(&self, year: f64) -> f64 {
        (self.ln_intercept + self.ln_slope * (year - self.reference_year)).exp()
    }

    fn window(&self) -> (f64, f64) {
        self.fit_window
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialFit {
    pub reference_year: f64,
    /// c0..ck in powers of (year - reference_year).
    pub coefficients: Vec<f64>,
    pub degree: usize,
    pub rmse: f64,
    pub fit_window: (f64, f64),
}

impl Model for PolynomialFit {
    fn value_at(&self, year: f64) -> f64 {
        eval_polynomial(&self.coefficients, year - self.reference_year)
    }

    fn window(&self) -> (f64, f64) {
        self.fit_window
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseExponentialFit {
    /// Last sample year of the left regime.
    pub changepoint_year: f64,
    pub left: ExponentialFit,
    pub right: ExponentialFit,
    pub sse_piecewise: f64,
    pub sse_single: f64,
    pub improvement_ratio: f64,
    pub min_segment: usize,
}

impl PiecewiseExponentialFit {
    pub fn is_regime_change(&self, threshold: f64) -> bool {
        self.improvement_ratio >= threshold
    }
}

impl Model for PiecewiseExponentialFit {
    fn value_at(&self, year: f64) -> f64 {
        if year > self.changepoint_year {
            self.right.value_at(year)
        } else {
            self.left.value_at(year)
        }
    }

    fn window(&self) -> (f64, f64) {
        (self.left.fit_window.0, self.right.fit_window.1)
    }
}

/// Any fitted growth model.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GrowthModel {
    Exponential(ExponentialFit),
    Polynomial(PolynomialFit),
    Piecewise(PiecewiseExponentialFit),
}

impl GrowthModel {
    pub fn as_exponential(&self) -> Option<&ExponentialFit> {
        match self {
            GrowthModel::Exponential(f) => Some(f),
            _ => None,
        }
    }
}

impl Model for GrowthModel {
    fn value_at(&self, year: f64) -> f64 {
        match self {
            GrowthModel::Exponential(f) => f.value_at(year),
            GrowthModel::Polynomial(f) => f.value_at(year),
            GrowthModel::Piecewise(f) => f.value_at(year),
        }
    }

    fn window(&self) -> (f64, f64) {
        match self {
            GrowthModel::Exponential(f) => f.window(),
            GrowthModel::Polynomial(f) => f.window(),
            GrowthModel::Piecewise(f) => f.window(),
        }
    }
}

impl From<ExponentialFit> for GrowthModel {
    fn from(f: ExponentialFit) -> Self {
        GrowthModel::Exponential(f)
    }
}

impl From<PolynomialFit> for GrowthModel {
    fn from(f: PolynomialFit) -> Self {
        GrowthModel::Polynomial(f)
    }
}

impl From<PiecewiseExponentialFit> for GrowthModel {
    fn from(f: PiecewiseExponentialFit) -> Self {
        GrowthModel::Piecewise(f)
    }
}

pub fn fit_exponential(series: &CapacitySeries, window: YearWindow) -> Result<ExponentialFit> {
    exponential_from_samples(&window.select(series))
}

fn exponential_from_samples(samples: &[Sample]) -> Result<ExponentialFit> {
    if samples.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: samples.len(),
        });
    }
    if let Some(s) = samples.iter().find(|s| s.value <= 0.0) {
        return Err(Error::NonPositiveValue {
            year: s.year,
            value: s.value,
        });
    }
    let t0 = samples[0].year;
    let xs: Vec<f64> = samples.iter().map(|s| s.year - t0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.value.ln()).collect();
    let line = fit_line(&xs, &ys)?;
    let residual_signs = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let r = y - line.predict(x);
            if r.abs() <= 1e-12 * y.abs().max(1.0) {
                '0'
            } else if r > 0.0 {
                '+'
            } else {
                '-'
            }
        })
        .collect();
    Ok(ExponentialFit {
        reference_year: t0,
        ln_intercept: line.intercept,
        ln_slope: line.slope,
        r_squared_logspace: line.r_squared(),
        rmse_logspace: line.rmse(),
        fit_window: (t0, samples[samples.len() - 1].year),
        n_points: samples.len(),
        residual_signs,
    })
}

pub fn fit_polynomial(
    series: &CapacitySeries,
    degree: usize,
    window: YearWindow,
) -> Result<PolynomialFit> {
    let samples = window.select(series);
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    if samples.len() < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: samples.len(),
        });
    }
    let t0 = samples[0].year;
    let xs: Vec<f64> = samples.iter().map(|s| s.year - t0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let coefficients = poly_lsq(&xs, &ys, degree)?;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| (y - eval_polynomial(&coefficients, x)).powi(2))
        .sum();
    Ok(PolynomialFit {
        reference_year: t0,
        coefficients,
        degree,
        rmse: (sse / xs.len() as f64).sqrt(),
        fit_window: (t0, samples[samples.len() - 1].year),
    })
}

fn log_sse(samples: &[Sample]) -> Result<f64> {
    let t0 = samples[0].year;
    let xs: Vec<f64> = samples.iter().map(|s| s.year - t0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.value.ln()).collect();
    Ok(fit_line(&xs, &ys)?.ss_res)
}

/// Exhaustive scan over split points at sample years; returns the split
/// with the smallest total log-space squared error.
pub fn detect_changepoint(
    series: &CapacitySeries,
    min_segment: usize,
) -> Result<PiecewiseExponentialFit> {
    if min_segment < 3 {
        return Err(Error::ConfigInvalid(format!(
            "min_segment must be at least 3, got {min_segment}"
        )));
    }
    let samples = series.samples();
    let n = samples.len();
    if n < 2 * min_segment {
        return Err(Error::TooFewPoints {
            needed: 2 * min_segment,
            got: n,
        });
    }
    if let Some(s) = samples.iter().find(|s| s.value <= 0.0) {
        return Err(Error::NonPositiveValue {
            year: s.year,
            value: s.value,
        });
    }

    let sse_single = log_sse(samples)?;
    let ss_tot = {
        let ys: Vec<f64> = samples.iter().map(|s| s.value.ln()).collect();
        let mean = ys.iter().sum::<f64>() / n as f64;
        ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>()
    };

    let mut best: Option<(usize, f64)> = None;
    for k in min_segment..=n - min_segment {
        let sse = log_sse(&samples[..k])? + log_sse(&samples[k..])?;
        if best.is_none_or(|(_, b)| sse < b) {
            best = Some((k, sse));
        }
    }
    let (k, sse_piecewise) = best.expect("at least one candidate split");

    // Both errors are pure rounding noise for an exact exponential.
    let improvement_ratio = if sse_single <= 1e-18 * ss_tot.max(1.0) {
        0.0
    } else {
        1.0 - sse_piecewise / sse_single
    };

    Ok(PiecewiseExponentialFit {
        changepoint_year: samples[k - 1].year,
        left: exponential_from_samples(&samples[..k])?,
        right: exponential_from_samples(&samples[k..])?,
        sse_piecewise,
        sse_single,
        improvement_ratio,
        min_segment,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub year: f64,
    pub value: f64,
    /// Set when `year` lies more than [`HORIZON_WARNING_YEARS`] past the data.
    pub horizon_warning: bool,
}

pub fn extrapolate<M: Model + ?Sized>(model: &M, year: f64) -> Result<Extrapolation> {
    let (start, end) = model.window();
    if year < start || year.is_nan() {
        return Err(Error::YearBeforeWindow {
            year,
            window_start: start,
        });
    }
    Ok(Extrapolation {
        year,
        value: model.value_at(year),
        horizon_warning: year > end + HORIZON_WARNING_YEARS,
    })
}

pub fn doubling_time(fit: &ExponentialFit) -> Result<f64> {
    if fit.ln_slope > 0.0 {
        Ok(std::f64::consts::LN_2 / fit.ln_slope)
    } else {
        Err(Error::NonGrowingSeries(fit.ln_slope))
    }
}
