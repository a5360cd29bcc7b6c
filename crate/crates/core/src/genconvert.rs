//! Installed power to annual generation capability via capacity factors.

use serde::Serialize;

use crate::corpus::{CapacitySeries, QuantityKind, Sample, Unit};
use crate::error::{Error, Result};
use crate::growthfit::{GrowthModel, Model};

pub const HOURS_PER_YEAR: f64 = 8760.0;

/// A technology with its global average capacity factor, its installed
/// power history and the growth model used to project it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechnologyProfile {
    pub name: String,
    capacity_factor: f64,
    pub series: CapacitySeries,
    pub model: Option<GrowthModel>,
}

impl TechnologyProfile {
    pub fn new(
        name: impl Into<String>,
        capacity_factor: f64,
        series: CapacitySeries,
        model: Option<GrowthModel>,
    ) -> Result<Self> {
        check_capacity_factor(capacity_factor)?;
        if series.kind() != QuantityKind::InstalledPower {
            return Err(Error::UnitMismatch {
                expected: QuantityKind::InstalledPower.to_string(),
                found: series.kind().to_string(),
            });
        }
        Ok(TechnologyProfile {
            name: name.into(),
            capacity_factor,
            series,
            model,
        })
    }

    pub fn capacity_factor(&self) -> f64 {
        self.capacity_factor
    }

    /// Projected generation (TWh/yr) from the attached model; `None` when
    /// the profile carries no model.
    pub fn projected_generation(&self, year: f64) -> Option<f64> {
        self.model
            .as_ref()
            .map(|m| m.value_at(year) * self.capacity_factor * HOURS_PER_YEAR / 1000.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationSeries {
    pub technology: String,
    pub samples: Vec<Sample>,
}

impl GenerationSeries {
    pub fn value_at(&self, year: f64) -> Option<f64> {
        self.samples
            .iter()
            .find(|s| s.year == year)
            .map(|s| s.value)
    }

    /// As a [`CapacitySeries`] of kind `annual_generation`, e.g. for fitting.
    pub fn to_series(&self) -> Result<CapacitySeries> {
        CapacitySeries::new(
            self.technology.clone(),
            QuantityKind::AnnualGeneration,
            Unit::TwhPerYear,
            self.samples.clone(),
            "derived from installed power and capacity factor",
            false,
        )
    }
}

fn check_capacity_factor(cf: f64) -> Result<()> {
    if cf > 0.0 && cf <= 1.0 {
        Ok(())
    } else {
        Err(Error::CapacityFactorOutOfRange(cf))
    }
}

/// GW at the given capacity factor to TWh/yr.
pub fn generation_capability(power_gw: f64, capacity_factor: f64) -> Result<f64> {
    check_capacity_factor(capacity_factor)?;
    if power_gw < 0.0 || power_gw.is_nan() {
        return Err(Error::NegativePower(power_gw));
    }
    Ok(power_gw * capacity_factor * HOURS_PER_YEAR / 1000.0)
}

pub fn series_to_generation(profile: &TechnologyProfile) -> Result<GenerationSeries> {
    let samples = profile
        .series
        .samples()
        .iter()
        .map(|s| {
            Ok(Sample::new(
                s.year,
                generation_capability(s.value, profile.capacity_factor)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GenerationSeries {
        technology: profile.name.clone(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gw(points: &[(f64, f64)]) -> CapacitySeries {
        let samples = points.iter().map(|&(y, v)| Sample::new(y, v)).collect();
        CapacitySeries::new(
            "t",
            QuantityKind::InstalledPower,
            Unit::Gw,
            samples,
            "",
            true,
        )
        .unwrap()
    }

    #[test]
    fn capability_examples() {
        assert!((generation_capability(1000.0, 1.0).unwrap() - 8760.0).abs() < 1e-9);
        assert!((generation_capability(1000.0, 0.256).unwrap() - 2242.56).abs() < 1e-9);
        assert_eq!(generation_capability(0.0, 0.3).unwrap(), 0.0);
        assert_eq!(
            generation_capability(1.0, 0.0),
            Err(Error::CapacityFactorOutOfRange(0.0))
        );
        assert_eq!(
            generation_capability(1.0, 1.2),
            Err(Error::CapacityFactorOutOfRange(1.2))
        );
        assert!(matches!(
            generation_capability(-1.0, 0.5),
            Err(Error::NegativePower(_))
        ));
    }

    #[test]
    fn series_conversion() {
        let p = TechnologyProfile::new("pv", 0.256, gw(&[(2019.0, 630.0)]), None).unwrap();
        let g = series_to_generation(&p).unwrap();
        assert!((g.samples[0].value - 630.0 * 0.256 * 8.76).abs() < 1e-9);
        assert!((g.samples[0].value - 1412.8).abs() < 0.1);

        let p =
            TechnologyProfile::new("x", 0.5, gw(&[(2000.0, 1.0), (2001.0, 2.0)]), None).unwrap();
        let g = series_to_generation(&p).unwrap();
        assert_eq!(g.samples.len(), 2);
        assert_eq!(g.samples[1].year, 2001.0);
        assert_eq!(p.projected_generation(2001.0), None);
    }

    #[test]
    fn profile_rejects_bad_factor() {
        assert!(matches!(
            TechnologyProfile::new("x", 1.5, gw(&[(2000.0, 1.0)]), None),
            Err(Error::CapacityFactorOutOfRange(_))
        ));
    }

    proptest! {
        #[test]
        fn linear_and_monotone(p1 in 0.0f64..1e5, p2 in 0.0f64..1e5, alpha in 0.0f64..100.0, cf in 0.01f64..1.0) {
            let g1 = generation_capability(p1, cf).unwrap();
            let scaled = generation_capability(alpha * p1, cf).unwrap();
            prop_assert!((scaled - alpha * g1).abs() <= 1e-12 * scaled.abs().max(1e-300));
            let g2 = generation_capability(p2, cf).unwrap();
            if p1 <= p2 { prop_assert!(g1 <= g2); }
        }
    }
}
