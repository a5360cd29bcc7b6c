//! Combined projections, threshold crossings and generation mixes.

use serde::Serialize;

use crate::corpus::{CapacitySeries, ConstantsRegistry};
use crate::error::{Error, Result};
use crate::genconvert::TechnologyProfile;
use crate::growthfit::{
    detect_changepoint, extrapolate, fit_exponential, GrowthModel, Model, YearWindow,
};

pub const DEFAULT_HORIZON: f64 = 2050.0;
/// Spacing of the monotonicity check before bisection.
pub const MONOTONE_GRID_STEP: f64 = 0.1;
/// Bisection stops once the bracket is narrower than this (years).
pub const BISECTION_TOLERANCE: f64 = 1e-9;

/// Sum of per-technology generation projections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinedProjection {
    components: Vec<TechnologyProfile>,
}

pub fn combine(profiles: Vec<TechnologyProfile>) -> Result<CombinedProjection> {
    if profiles.is_empty() {
        return Err(Error::EmptyCombination);
    }
    if let Some(p) = profiles.iter().find(|p| p.model.is_none()) {
        return Err(Error::ConfigInvalid(format!(
            "technology `{}` has no fitted model",
            p.name
        )));
    }
    Ok(CombinedProjection {
        components: profiles,
    })
}

impl CombinedProjection {
    pub fn components(&self) -> &[TechnologyProfile] {
        &self.components
    }

    pub fn names(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.name.as_str()).collect()
    }

    /// Earliest year at which every component can be evaluated.
    pub fn start(&self) -> f64 {
        self.components
            .iter()
            .map(|c| model_of(c).window().0)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Generation (TWh/yr) of each component at `year`.
    pub fn component_values(&self, year: f64) -> Result<Vec<f64>> {
        self.components
            .iter()
            .map(|c| {
                let power = extrapolate(model_of(c), year)?.value.max(0.0);
                Ok(power * c.capacity_factor() * crate::genconvert::HOURS_PER_YEAR / 1000.0)
            })
            .collect()
    }

    pub fn evaluate(&self, year: f64) -> Result<f64> {
        Ok(self.component_values(year)?.iter().sum())
    }
}

fn model_of(profile: &TechnologyProfile) -> &GrowthModel {
    profile
        .model
        .as_ref()
        .expect("combine() only accepts profiles with a model")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemandThreshold {
    pub name: String,
    /// TWh/yr
    pub level: f64,
    /// Year the level is associated with by its source.
    pub stated_year: f64,
    pub citation: String,
}

impl DemandThreshold {
    pub fn new(
        name: impl Into<String>,
        level: f64,
        stated_year: f64,
        citation: impl Into<String>,
    ) -> Result<Self> {
        if !(level > 0.0) {
            return Err(Error::ConfigInvalid(format!(
                "threshold level must be positive, got {level}"
            )));
        }
        Ok(DemandThreshold {
            name: name.into(),
            level,
            stated_year,
            citation: citation.into(),
        })
    }

    /// Every demand level in the constants registry, with the year its
    /// source attaches to it.
    pub fn registered() -> Vec<DemandThreshold> {
        let reg = ConstantsRegistry;
        [
            ("electric_threshold_fig5", 2026.0),
            ("electric_demand_2030", 2030.0),
            ("reduced_primary_2030", 2030.0),
            ("primary_demand_2030", 2030.0),
            ("primary_threshold_fig5", 2032.0),
        ]
        .iter()
        .map(|&(name, year)| {
            let c = reg.get(name).expect("registered demand constant");
            DemandThreshold {
                name: name.to_string(),
                level: c.value,
                stated_year: year,
                citation: c.citation.to_string(),
            }
        })
        .collect()
    }

    pub fn registered_by_name(name: &str) -> Result<DemandThreshold> {
        Self::registered()
            .into_iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownThreshold(name.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Crossing {
    Year { year: f64 },
    AlreadySatisfied { at: f64 },
    NotReached { by: f64 },
}

impl Crossing {
    pub fn year(&self) -> Option<f64> {
        match self {
            Crossing::Year { year } => Some(*year),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingResult {
    pub threshold: String,
    pub level: f64,
    pub crossing: Crossing,
    pub horizon_used: f64,
}

/// First year at which the projection meets the threshold level.
///
/// The projection is sampled on a [`MONOTONE_GRID_STEP`] grid between its
/// start and the horizon and must not decrease; the root is then bracketed
/// by bisection.
pub fn crossing_year(
    projection: &CombinedProjection,
    threshold: &DemandThreshold,
    horizon: f64,
) -> Result<CrossingResult> {
    let start = projection.start();
    let level = threshold.level;
    let result = |crossing| CrossingResult {
        threshold: threshold.name.clone(),
        level,
        crossing,
        horizon_used: horizon,
    };

    let f_start = projection.evaluate(start)?;
    if f_start >= level {
        return Ok(result(Crossing::AlreadySatisfied { at: start }));
    }
    if horizon <= start {
        return Ok(result(Crossing::NotReached { by: horizon }));
    }

    let steps = ((horizon - start) / MONOTONE_GRID_STEP).ceil().max(1.0) as usize;
    let h = (horizon - start) / steps as f64;
    let mut prev = (start, f_start);
    let mut bracket: Option<(f64, f64)> = None;
    for i in 1..=steps {
        let t = if i == steps {
            horizon
        } else {
            start + i as f64 * h
        };
        let v = projection.evaluate(t)?;
        if v < prev.1 - 1e-12 * prev.1.abs() {
            return Err(Error::NonMonotoneProjection {
                from: prev.0,
                to: t,
            });
        }
        if bracket.is_none() && v >= level {
            bracket = Some((prev.0, t));
        }
        prev = (t, v);
    }

    let Some((mut lo, mut hi)) = bracket else {
        return Ok(result(Crossing::NotReached { by: horizon }));
    };
    while hi - lo > BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if projection.evaluate(mid)? >= level {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(result(Crossing::Year {
        year: 0.5 * (lo + hi),
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixEntry {
    pub technology: String,
    /// TWh/yr
    pub generation: f64,
    pub share_percent: f64,
}

pub fn mix_at_year(projection: &CombinedProjection, year: f64) -> Result<Vec<MixEntry>> {
    let values = projection.component_values(year)?;
    let total: f64 = values.iter().sum();
    let n = values.len() as f64;
    Ok(projection
        .components
        .iter()
        .zip(values)
        .map(|(c, v)| MixEntry {
            technology: c.name.clone(),
            generation: v,
            share_percent: if total > 0.0 {
                100.0 * v / total
            } else {
                100.0 / n
            },
        })
        .collect())
}

/// Year at which the exponential generation projections of two
/// technologies are equal.
pub fn pv_wind_generation_crossover(
    pv: &TechnologyProfile,
    wind: &TechnologyProfile,
) -> Result<f64> {
    let exp = |p: &TechnologyProfile| {
        p.model
            .as_ref()
            .and_then(GrowthModel::as_exponential)
            .cloned()
            .ok_or_else(|| Error::NotExponential(p.name.clone()))
    };
    let (a, b) = (exp(pv)?, exp(wind)?);
    let slope_gap = a.ln_slope - b.ln_slope;
    if slope_gap == 0.0 {
        return Err(Error::ParallelGrowth);
    }
    // ln cf + a0 + b (t - t0) equal on both sides
    let lhs = pv.capacity_factor().ln() + a.ln_intercept - a.ln_slope * a.reference_year;
    let rhs = wind.capacity_factor().ln() + b.ln_intercept - b.ln_slope * b.reference_year;
    Ok((rhs - lhs) / slope_gap)
}

/// How wind is projected past the end of its record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindTreatment {
    /// Piecewise fit; projects the post-changepoint regime.
    Current,
    /// Exponential fit over the pre-changepoint window only.
    Rebound,
    /// Single exponential over the whole record.
    Trend,
}

impl WindTreatment {
    pub const ALL: [WindTreatment; 3] = [
        WindTreatment::Current,
        WindTreatment::Rebound,
        WindTreatment::Trend,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WindTreatment::Current => "current",
            WindTreatment::Rebound => "rebound",
            WindTreatment::Trend => "trend",
        }
    }
}

impl std::str::FromStr for WindTreatment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "current" => Ok(WindTreatment::Current),
            "rebound" => Ok(WindTreatment::Rebound),
            "trend" => Ok(WindTreatment::Trend),
            other => Err(Error::ConfigInvalid(format!(
                "unknown wind treatment `{other}`"
            ))),
        }
    }
}

pub fn wind_model(
    series: &CapacitySeries,
    treatment: WindTreatment,
    exponential_window: YearWindow,
    min_segment: usize,
) -> Result<GrowthModel> {
    Ok(match treatment {
        WindTreatment::Current => detect_changepoint(series, min_segment)?.into(),
        WindTreatment::Rebound => fit_exponential(series, exponential_window)?.into(),
        WindTreatment::Trend => fit_exponential(series, YearWindow::FULL)?.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{QuantityKind, Sample, Unit};
    use crate::growthfit::ExponentialFit;

    fn profile(name: &str, cf: f64, fit: ExponentialFit) -> TechnologyProfile {
        let series = CapacitySeries::new(
            name,
            QuantityKind::InstalledPower,
            Unit::Gw,
            vec![Sample::new(fit.reference_year, fit.ln_intercept.exp())],
            "",
            true,
        )
        .unwrap();
        TechnologyProfile::new(name, cf, series, Some(fit.into())).unwrap()
    }

    fn doubling_from_2000() -> TechnologyProfile {
        profile(
            "a",
            1.0,
            ExponentialFit::from_parameters(2000.0, 1.0, std::f64::consts::LN_2, 2005.0),
        )
    }

    #[test]
    fn single_and_doubled_components() {
        let one = combine(vec![doubling_from_2000()]).unwrap();
        let two = combine(vec![doubling_from_2000(), doubling_from_2000()]).unwrap();
        for t in [2000.0, 2003.5, 2010.0] {
            let c = doubling_from_2000().projected_generation(t).unwrap();
            assert_eq!(one.evaluate(t).unwrap(), c);
            assert_eq!(two.evaluate(t).unwrap(), 2.0 * c);
        }
        assert_eq!(combine(vec![]), Err(Error::EmptyCombination));
    }

    #[test]
    fn crossing_matches_closed_form() {
        let proj = combine(vec![doubling_from_2000()]).unwrap();
        let th = DemandThreshold::new("x", 8960.0, 2010.0, "").unwrap();
        let r = crossing_year(&proj, &th, DEFAULT_HORIZON).unwrap();
        let expected = 2000.0 + (8960.0f64 / 8.76).log2();
        let got = r.crossing.year().unwrap();
        assert!((got - expected).abs() < 1e-6, "{got} vs {expected}");
        assert!((got - 2009.9984).abs() < 1e-4);
        assert!((proj.evaluate(got).unwrap() - 8960.0).abs() <= 1e-6 * 8960.0);
    }

    #[test]
    fn crossing_boundaries() {
        let proj = combine(vec![doubling_from_2000()]).unwrap();
        let low = DemandThreshold::new("low", 1.0, 2000.0, "").unwrap();
        assert_eq!(
            crossing_year(&proj, &low, DEFAULT_HORIZON)
                .unwrap()
                .crossing,
            Crossing::AlreadySatisfied { at: 2000.0 }
        );
        let high = DemandThreshold::new("high", 1e12, 2000.0, "").unwrap();
        assert_eq!(
            crossing_year(&proj, &high, 2020.0).unwrap().crossing,
            Crossing::NotReached { by: 2020.0 }
        );
    }

    #[test]
    fn decreasing_projection_is_rejected() {
        let p = profile(
            "d",
            0.5,
            ExponentialFit::from_parameters(2000.0, 100.0, -0.1, 2005.0),
        );
        let proj = combine(vec![p]).unwrap();
        let th = DemandThreshold::new("t", 1e6, 2030.0, "").unwrap();
        assert!(matches!(
            crossing_year(&proj, &th, 2030.0),
            Err(Error::NonMonotoneProjection { .. })
        ));
    }

    #[test]
    fn mix_examples() {
        let one = combine(vec![doubling_from_2000()]).unwrap();
        let m = mix_at_year(&one, 2004.0).unwrap();
        assert_eq!(m[0].share_percent, 100.0);
        let two = combine(vec![doubling_from_2000(), doubling_from_2000()]).unwrap();
        let m = mix_at_year(&two, 2004.0).unwrap();
        assert_eq!(m[0].share_percent, 50.0);
        assert_eq!(m[1].share_percent, 50.0);
        assert!(matches!(
            mix_at_year(&two, 1990.0),
            Err(Error::YearBeforeWindow { .. })
        ));
    }

    #[test]
    fn crossover_examples() {
        let pv = profile(
            "pv",
            0.3,
            ExponentialFit::from_parameters(2000.0, 1.0, 2f64.ln(), 2005.0),
        );
        let wind = profile(
            "wind",
            0.3,
            ExponentialFit::from_parameters(2000.0, 4.0, 1.5f64.ln(), 2005.0),
        );
        let t = pv_wind_generation_crossover(&pv, &wind).unwrap();
        let expected = 2000.0 + 4f64.ln() / (4.0f64 / 3.0).ln();
        assert!((t - expected).abs() < 1e-9);
        assert!((t - 2004.819).abs() < 1e-3);
        assert_eq!(
            pv_wind_generation_crossover(&pv, &pv),
            Err(Error::ParallelGrowth)
        );
    }

    #[test]
    fn registered_thresholds() {
        let all = DemandThreshold::registered();
        assert_eq!(all.len(), 5);
        assert_eq!(
            DemandThreshold::registered_by_name("electric_threshold_fig5")
                .unwrap()
                .level,
            33_000.0
        );
        assert!(DemandThreshold::registered_by_name("nope").is_err());
    }
}
