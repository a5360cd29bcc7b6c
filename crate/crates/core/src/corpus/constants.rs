//! Fixed inputs of the scenario: demand levels, capacity factors, areas and
//! resource potentials. Values are stored exactly as stated by their sources
//! and are never recomputed.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub value: f64,
    pub unit: &'static str,
    pub citation: &'static str,
}

const fn c(name: &'static str, value: f64, unit: &'static str, citation: &'static str) -> Constant {
    Constant {
        name,
        value,
        unit,
        citation,
    }
}

static REGISTRY: &[Constant] = &[
    c("electric_demand_2030", 35_000.0, "TWh/yr", "Schalk 2019, electric energy demand forecast for 2030"),
    c("primary_demand_2030", 186_000.0, "TWh/yr", "Schalk 2019, primary energy demand forecast for 2030"),
    c(
        "reduced_primary_2030",
        106_950.0,
        "TWh/yr",
        "Jacobson et al. 2017 efficiency gain of 42.5% applied to the 2030 primary demand",
    ),
    c("electric_threshold_fig5", 33_000.0, "TWh/yr", "Schalk 2019, electric consumption level plotted for 2026"),
    c("primary_threshold_fig5", 198_000.0, "TWh/yr", "Schalk 2019, primary consumption level plotted for 2032"),
    c(
        "efficiency_reduction",
        0.425,
        "fraction",
        "Jacobson et al. 2017, reduced primary consumption under full electrification",
    ),
    c("cf_pv", 0.256, "fraction", "EIA 2020 Electric Power Monthly table 6.07.B, US utility PV 2017"),
    c("cf_wind", 0.354, "fraction", "EIA 2020 Electric Power Monthly table 6.07.B, US wind"),
    c("cf_hydro", 0.43, "fraction", "IHA 2020 hydropower status, average capacity factor"),
    c("pv_density", 42.8, "MW/km2", "average peak power density of large utility PV plants"),
    c("desert_area", 34.93e6, "km2", "global desert area excluding Antarctica, Wikipedia 2021"),
    c("onshore_wind_potential", 690_000.0, "TWh/yr", "Lu et al. 2009, global onshore wind potential"),
    c("offshore_20m", 41_200.0, "TWh/yr", "Arent et al. 2012, offshore wind resource to 20 m depth"),
    c("offshore_50m", 92_500.0, "TWh/yr", "Arent et al. 2012, offshore wind resource to 50 m depth"),
    c("offshore_200m", 192_000.0, "TWh/yr", "Arent et al. 2012, offshore wind resource to 200 m depth with floating turbines"),
    c(
        "offshore_1000m",
        301_085.0,
        "TWh/yr",
        "Kausche et al. 2018, floating offshore resource to 1000 m depth, extrapolated by sea area",
    ),
    c(
        "wind_total_potential_as_stated",
        301_775.0,
        "TWh/yr",
        "stated onshore plus offshore total; does not equal 690,000 + 301,085",
    ),
    c(
        "hydro_developed_potential",
        6.5,
        "TWh/yr",
        "Mariusson and Thorsteinsson 1997, developed hydropower potential as stated (likely thousand TWh/yr)",
    ),
    c(
        "hydro_exploitable_potential",
        10.5,
        "TWh/yr",
        "Mariusson and Thorsteinsson 1997, exploitable hydropower potential as stated (likely thousand TWh/yr)",
    ),
    c("hours_per_year", 8760.0, "h", "365 days of 24 h, no leap-year correction"),
];

/// Read-only view of every registered constant.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantsRegistry;

impl ConstantsRegistry {
    pub fn all(&self) -> &'static [Constant] {
        REGISTRY
    }

    pub fn get(&self, name: &str) -> Result<&'static Constant> {
        REGISTRY
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownConstant(name.to_string()))
    }

    /// Shorthand for constants that are known to exist.
    pub fn value(&self, name: &str) -> f64 {
        match self.get(name) {
            Ok(c) => c.value,
            Err(_) => panic!("constant `{name}` is not registered"),
        }
    }
}

pub fn get_constant(name: &str) -> Result<&'static Constant> {
    ConstantsRegistry.get(name)
}

/// Primary demand after the registered efficiency reduction.
pub fn reduced_primary(demand: f64) -> Result<f64> {
    if demand < 0.0 || demand.is_nan() {
        return Err(Error::NegativeDemand(demand));
    }
    Ok(demand - demand * ConstantsRegistry.value("efficiency_reduction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lookups() {
        assert_eq!(get_constant("cf_pv").unwrap().value, 0.256);
        assert_eq!(get_constant("desert_area").unwrap().value, 34.93e6);
        assert_eq!(get_constant("desert_area").unwrap().unit, "km2");
        assert_eq!(get_constant("efficiency_reduction").unwrap().value, 0.425);
        assert_eq!(
            get_constant("nope"),
            Err(Error::UnknownConstant("nope".into()))
        );
    }

    #[test]
    fn names_are_unique_and_cited() {
        let all = ConstantsRegistry.all();
        for (i, a) in all.iter().enumerate() {
            assert!(!a.citation.is_empty(), "{} lacks a citation", a.name);
            assert!(
                all[i + 1..].iter().all(|b| b.name != a.name),
                "{} duplicated",
                a.name
            );
        }
    }

    #[test]
    fn reduced_primary_examples() {
        assert_eq!(reduced_primary(186_000.0).unwrap(), 106_950.0);
        assert_eq!(reduced_primary(0.0).unwrap(), 0.0);
        assert!((reduced_primary(1_000.0).unwrap() - 575.0).abs() < 1e-12);
        assert_eq!(reduced_primary(-1.0), Err(Error::NegativeDemand(-1.0)));
    }

    proptest! {
        #[test]
        fn reduced_primary_is_additive(a in 0.0f64..1e6, b in 0.0f64..1e6) {
            let lhs = reduced_primary(a + b).unwrap();
            let rhs = reduced_primary(a).unwrap() + reduced_primary(b).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
        }
    }
}
