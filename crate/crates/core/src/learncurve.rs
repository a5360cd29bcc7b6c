//! Cost curves: exponential decay over time and power-law learning curves
//! against cumulative generation capability.
//!
//! The learning rate is the fractional cost drop per doubling of the
//! x quantity, `1 - 2^slope`, where `slope` is the slope of log cost versus
//! log x (the same in any logarithm base).

use serde::Serialize;

use crate::corpus::{CapacitySeries, QuantityKind, Sample, Unit};
use crate::error::{Error, Result};
use crate::genconvert::GenerationSeries;
use crate::regression::fit_line;

/// Costs below this (USD/MWh) are flagged when extrapolated.
pub const COST_FLOOR_USD_PER_MWH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XKind {
    Year,
    CumulativeGeneration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostSeries {
    pub technology: String,
    pub x_kind: XKind,
    pub unit: Unit,
    samples: Vec<Sample>,
}

impl CostSeries {
    pub fn new(
        technology: impl Into<String>,
        x_kind: XKind,
        unit: Unit,
        samples: Vec<Sample>,
    ) -> Result<Self> {
        for s in &samples {
            if !(s.value > 0.0) {
                return Err(Error::NonPositiveValue {
                    year: s.year,
                    value: s.value,
                });
            }
            if x_kind == XKind::CumulativeGeneration && !(s.year > 0.0) {
                return Err(Error::NonPositiveX(s.year));
            }
        }
        if let Some(w) = samples.windows(2).find(|w| !(w[1].year > w[0].year)) {
            return Err(Error::Parse {
                line: 0,
                message: format!("x values not strictly increasing at {}", w[1].year),
            });
        }
        Ok(CostSeries {
            technology: technology.into(),
            x_kind,
            unit,
            samples,
        })
    }

    /// Year-indexed cost series from a loaded `unit_cost` file.
    pub fn from_series(series: &CapacitySeries) -> Result<Self> {
        if series.kind() != QuantityKind::UnitCost {
            return Err(Error::UnitMismatch {
                expected: QuantityKind::UnitCost.to_string(),
                found: series.kind().to_string(),
            });
        }
        Self::new(
            series.technology(),
            XKind::Year,
            series.unit(),
            series.samples().to_vec(),
        )
    }

    /// Samples as (x, cost); `Sample::year` holds x.
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }
}

/// Re-indexes a year-based cost series by the generation capability
/// installed in the same year.
pub fn join_cost_to_generation(
    costs: &CostSeries,
    generation: &GenerationSeries,
) -> Result<CostSeries> {
    if costs.x_kind != XKind::Year {
        return Err(Error::ConfigInvalid(
            "cost series is already indexed by generation".into(),
        ));
    }
    let samples = costs
        .samples
        .iter()
        .map(|s| {
            generation
                .value_at(s.year)
                .map(|x| Sample::new(x, s.value))
                .ok_or(Error::YearNotCovered(s.year))
        })
        .collect::<Result<Vec<_>>>()?;
    CostSeries::new(
        costs.technology.clone(),
        XKind::CumulativeGeneration,
        costs.unit,
        samples,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningCurveFit {
    pub technology: String,
    pub log10_intercept: f64,
    pub log10_slope: f64,
    pub r_squared: f64,
    pub rmse_log10: f64,
    pub x_range: (f64, f64),
    pub x_kind: XKind,
}

impl LearningCurveFit {
    pub fn cost(&self, x: f64) -> f64 {
        10f64.powf(self.log10_intercept + self.log10_slope * x.log10())
    }
}

pub fn fit_learning_curve(series: &CostSeries) -> Result<LearningCurveFit> {
    if series.x_kind != XKind::CumulativeGeneration {
        return Err(Error::ConfigInvalid(
            "learning curves need a generation-indexed cost series".into(),
        ));
    }
    let n = series.samples.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let xs: Vec<f64> = series.samples.iter().map(|s| s.year.log10()).collect();
    let ys: Vec<f64> = series.samples.iter().map(|s| s.value.log10()).collect();
    let line = fit_line(&xs, &ys)?;
    Ok(LearningCurveFit {
        technology: series.technology.clone(),
        log10_intercept: line.intercept,
        log10_slope: line.slope,
        r_squared: line.r_squared(),
        rmse_log10: line.rmse(),
        x_range: (series.samples[0].year, series.samples[n - 1].year),
        x_kind: series.x_kind,
    })
}

/// Fractional cost reduction per doubling of x.
pub fn learning_rate(fit: &LearningCurveFit) -> Result<f64> {
    slope_to_learning_rate(fit.log10_slope)
}

pub fn slope_to_learning_rate(slope: f64) -> Result<f64> {
    if slope > 0.0 {
        return Err(Error::PositiveSlope(slope));
    }
    Ok(1.0 - 2f64.powf(slope))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostEstimate {
    pub x: f64,
    pub cost: f64,
    /// x lies outside the fitted range.
    pub extrapolated: bool,
    /// Extrapolated below [`COST_FLOOR_USD_PER_MWH`].
    pub below_floor: bool,
}

pub fn cost_at(fit: &LearningCurveFit, x: f64) -> Result<CostEstimate> {
    if !(x > 0.0) {
        return Err(Error::NonPositiveX(x));
    }
    let cost = fit.cost(x);
    let extrapolated = x < fit.x_range.0 || x > fit.x_range.1;
    Ok(CostEstimate {
        x,
        cost,
        extrapolated,
        below_floor: extrapolated && cost < COST_FLOOR_USD_PER_MWH,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveCrossing {
    pub x: f64,
    pub cost: f64,
}

/// Intersection of two learning-curve lines in log-log space.
pub fn curve_crossing(a: &LearningCurveFit, b: &LearningCurveFit) -> Result<CurveCrossing> {
    let gap = a.log10_slope - b.log10_slope;
    if gap == 0.0 {
        return Err(Error::ParallelLines);
    }
    let log_x = (b.log10_intercept - a.log10_intercept) / gap;
    let x = 10f64.powf(log_x);
    let cost = 10f64.powf(a.log10_intercept + a.log10_slope * log_x);
    // nearly parallel lines meet outside the representable range
    if !(x.is_normal() && cost.is_normal()) {
        return Err(Error::ParallelLines);
    }
    Ok(CurveCrossing { x, cost })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeDecayFit {
    pub technology: String,
    pub reference_year: f64,
    pub cost_at_reference: f64,
    /// Cost multiplier per year.
    pub annual_factor: f64,
    pub r_squared: f64,
    pub fit_window: (f64, f64),
}

impl TimeDecayFit {
    pub fn cost(&self, year: f64) -> f64 {
        self.cost_at_reference * self.annual_factor.powf(year - self.reference_year)
    }
}

pub fn fit_time_decay(series: &CostSeries) -> Result<TimeDecayFit> {
    if series.x_kind != XKind::Year {
        return Err(Error::ConfigInvalid(
            "time decay needs a year-indexed cost series".into(),
        ));
    }
    let n = series.samples.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let t0 = series.samples[0].year;
    let xs: Vec<f64> = series.samples.iter().map(|s| s.year - t0).collect();
    let ys: Vec<f64> = series.samples.iter().map(|s| s.value.ln()).collect();
    let line = fit_line(&xs, &ys)?;
    Ok(TimeDecayFit {
        technology: series.technology.clone(),
        reference_year: t0,
        cost_at_reference: line.intercept.exp(),
        annual_factor: line.slope.exp(),
        r_squared: line.r_squared(),
        fit_window: (t0, series.samples[n - 1].year),
    })
}
