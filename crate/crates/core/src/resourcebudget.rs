//! Land-area and resource-potential budgets for supplying a demand level.

use serde::Serialize;

use crate::corpus::datasets::AreaPotentialRow;
use crate::corpus::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::genconvert::HOURS_PER_YEAR;
use crate::regression::fit_line;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourcePotential {
    pub name: String,
    /// TWh/yr
    pub annual_potential: f64,
    pub qualifier: String,
    pub citation: String,
}

impl ResourcePotential {
    pub fn new(
        name: impl Into<String>,
        annual_potential: f64,
        qualifier: impl Into<String>,
        citation: impl Into<String>,
    ) -> Result<Self> {
        if !(annual_potential > 0.0) {
            return Err(Error::ConfigInvalid(format!(
                "potential must be positive, got {annual_potential}"
            )));
        }
        Ok(ResourcePotential {
            name: name.into(),
            annual_potential,
            qualifier: qualifier.into(),
            citation: citation.into(),
        })
    }

    /// Potential taken from a registered constant.
    pub fn registered(constant: &str, qualifier: &str) -> Result<Self> {
        let c = ConstantsRegistry.get(constant)?;
        Self::new(c.name, c.value, qualifier, c.citation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaBudget {
    /// TWh/yr
    pub demand: f64,
    /// MW per km2
    pub density: f64,
    pub capacity_factor: f64,
    /// km2
    pub required_area: f64,
    /// km2
    pub reference_area: f64,
    pub fraction: f64,
}

fn check_cf(cf: f64) -> Result<()> {
    if cf > 0.0 && cf <= 1.0 {
        Ok(())
    } else {
        Err(Error::CapacityFactorOutOfRange(cf))
    }
}

/// PV area (km2) needed to generate `demand` TWh/yr.
pub fn pv_area_required(demand: f64, density: f64, capacity_factor: f64) -> Result<f64> {
    check_cf(capacity_factor)?;
    if !(density > 0.0) {
        return Err(Error::NonPositiveDensity(density));
    }
    if demand < 0.0 || demand.is_nan() {
        return Err(Error::NegativeDemand(demand));
    }
    // TWh -> MWh; MW/km2 * h -> MWh/km2
    Ok(demand * 1e6 / (density * capacity_factor * HOURS_PER_YEAR))
}

/// Installed power (GW) needed to generate `demand` TWh/yr.
pub fn power_required(demand: f64, capacity_factor: f64) -> Result<f64> {
    check_cf(capacity_factor)?;
    if demand < 0.0 || demand.is_nan() {
        return Err(Error::NegativeDemand(demand));
    }
    Ok(demand * 1000.0 / (capacity_factor * HOURS_PER_YEAR))
}

/// Share of the registered global desert area.
pub fn desert_fraction(area: f64) -> Result<f64> {
    if area < 0.0 || area.is_nan() {
        return Err(Error::NegativeArea(area));
    }
    Ok(area / ConstantsRegistry.value("desert_area"))
}

pub fn area_budget(demand: f64, density: f64, capacity_factor: f64) -> Result<AreaBudget> {
    let required_area = pv_area_required(demand, density, capacity_factor)?;
    Ok(AreaBudget {
        demand,
        density,
        capacity_factor,
        required_area,
        reference_area: ConstantsRegistry.value("desert_area"),
        fraction: desert_fraction(required_area)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialShare {
    pub fraction: f64,
    /// `f64::INFINITY` when demand is zero.
    #[serde(serialize_with = "finite_or_null")]
    pub times_over: f64,
}

fn finite_or_null<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

pub fn potential_fraction(demand: f64, potential: &ResourcePotential) -> Result<PotentialShare> {
    if demand < 0.0 || demand.is_nan() {
        return Err(Error::NegativeDemand(demand));
    }
    let p = potential.annual_potential;
    Ok(PotentialShare {
        fraction: demand / p,
        times_over: if demand == 0.0 {
            f64::INFINITY
        } else {
            p / demand
        },
    })
}

/// Linear least squares of potential against an area proxy, evaluated at
/// `target_area`.
pub fn offshore_depth_extrapolation(points: &[(f64, f64)], target_area: f64) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    if let Some(&(a, p)) = points.iter().find(|(a, p)| !(*a > 0.0) || !(*p > 0.0)) {
        return Err(Error::NonPositiveValue { year: a, value: p });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    Ok(fit_line(&xs, &ys)?.predict(target_area))
}

/// Runs [`offshore_depth_extrapolation`] on a table whose rows with a
/// potential are the fit points and whose single row without one is the target.
pub fn extrapolate_area_table(rows: &[AreaPotentialRow]) -> Result<(f64, f64)> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.potential.map(|p| (r.area, p)))
        .collect();
    let target = rows
        .iter()
        .find(|r| r.potential.is_none())
        .ok_or_else(|| Error::ConfigInvalid("area table has no target row".into()))?;
    Ok((
        target.depth_m,
        offshore_depth_extrapolation(&points, target.area)?,
    ))
}
