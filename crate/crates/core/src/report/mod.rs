//! End-to-end scenario runs: load datasets, fit every technology, project,
//! cross thresholds, evaluate cost curves and budgets, and collect the
//! result in one serializable [`ScenarioReport`].

pub mod config;
pub mod discrepancy;
pub mod svg;
pub mod tables;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::datasets::{offshore_area_table, resolve, AreaPotentialRow};
use crate::corpus::{
    reduced_primary, CapacitySeries, ConstantsRegistry, QuantityKind, Sample, SeriesSchema, Unit,
};
use crate::error::{Error, Result};
use crate::genconvert::{series_to_generation, TechnologyProfile, HOURS_PER_YEAR};
use crate::growthfit::{
    detect_changepoint, doubling_time, extrapolate, fit_exponential, fit_polynomial,
    ExponentialFit, Model, PiecewiseExponentialFit, PolynomialFit, YearWindow,
};
use crate::learncurve::{
    cost_at, curve_crossing, fit_learning_curve, fit_time_decay, join_cost_to_generation,
    learning_rate, slope_to_learning_rate, CostEstimate, CostSeries, CurveCrossing,
    LearningCurveFit, TimeDecayFit,
};
use crate::resourcebudget::{
    area_budget, extrapolate_area_table, potential_fraction, AreaBudget, PotentialShare,
    ResourcePotential,
};
use crate::scenario::{
    combine, crossing_year, mix_at_year, pv_wind_generation_crossover, Crossing, MixEntry,
    WindTreatment,
};

pub use config::ScenarioConfig;
pub use discrepancy::{emit_discrepancies, Discrepancy};
pub use svg::{emit_figure, FIGURE_IDS};

pub const SCHEMA_VERSION: &str = "vregrowth-report/1";

/// Installed power that counts as "1 TW" in the offshore milestone (GW).
const OFFSHORE_MILESTONE_GW: f64 = 1000.0;
/// Reference learning rate of module prices per doubling of shipments.
const SWANSON_LEARNING_RATE: f64 = 0.20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub schema: String,
    /// Unit of every quantity family appearing in the report.
    pub units: BTreeMap<&'static str, &'static str>,
    pub settings: Settings,
    pub series: Vec<SeriesRecord>,
    pub fits: Fits,
    pub crossings: Vec<CrossingRecord>,
    pub mixes: Vec<MixRecord>,
    pub crossovers: Vec<CrossoverRecord>,
    pub learning: LearningResults,
    pub budget: BudgetResults,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub horizon: f64,
    pub headline_wind_treatment: WindTreatment,
    pub changepoint_threshold: f64,
    pub min_segment: usize,
    pub hydro_degree: usize,
    pub capacity_factors: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRecord {
    pub name: String,
    pub technology: String,
    pub kind: QuantityKind,
    pub unit: Unit,
    pub provenance: String,
    pub samples: Vec<Sample>,
}

impl SeriesRecord {
    fn from_series(name: &str, s: &CapacitySeries) -> Self {
        SeriesRecord {
            name: name.to_string(),
            technology: s.technology().to_string(),
            kind: s.kind(),
            unit: s.unit(),
            provenance: s.provenance().to_string(),
            samples: s.samples().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentialSummary {
    pub fit: ExponentialFit,
    pub doubling_time_years: f64,
    pub capacity_factor: f64,
}

impl ExponentialSummary {
    fn new(fit: ExponentialFit, capacity_factor: f64) -> Result<Self> {
        Ok(ExponentialSummary {
            doubling_time_years: doubling_time(&fit)?,
            fit,
            capacity_factor,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseSummary {
    pub fit: PiecewiseExponentialFit,
    pub significance_threshold: f64,
    pub regime_change: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindFits {
    /// Single exponential over the whole record.
    pub trend: ExponentialSummary,
    /// Exponential over the configured pre-break window.
    pub rebound: ExponentialSummary,
    pub piecewise: PiecewiseSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffshoreSummary {
    #[serde(flatten)]
    pub exponential: ExponentialSummary,
    pub year_of_1_tw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HydroSummary {
    /// Polynomial on installed power (GW).
    pub fit: PolynomialFit,
    pub capacity_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fits {
    pub pv: ExponentialSummary,
    pub wind: WindFits,
    pub offshore_wind: OffshoreSummary,
    pub hydro: HydroSummary,
}

impl Fits {
    /// Exponential that carries wind past its record under `treatment`.
    pub fn wind_projection(&self, treatment: WindTreatment) -> &ExponentialFit {
        match treatment {
            WindTreatment::Current => &self.wind.piecewise.fit.right,
            WindTreatment::Rebound => &self.wind.rebound.fit,
            WindTreatment::Trend => &self.wind.trend.fit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingRecord {
    /// Technologies combined, joined by `+`.
    pub scenario: String,
    /// `None` for combinations without wind.
    pub wind_treatment: Option<WindTreatment>,
    pub headline: bool,
    pub threshold: String,
    pub level_twh_per_year: f64,
    pub stated_year: f64,
    pub crossing: Crossing,
    pub horizon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixRecord {
    pub year: f64,
    pub wind_treatment: WindTreatment,
    pub headline: bool,
    pub total_twh_per_year: f64,
    pub entries: Vec<MixEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverRecord {
    pub wind_treatment: WindTreatment,
    pub headline: bool,
    /// Year PV generation overtakes wind; `None` for parallel growth.
    pub year: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningCurveSummary {
    pub fit: LearningCurveFit,
    pub learning_rate: f64,
    /// (generation TWh/yr, cost USD/MWh) pairs the curve was fitted to.
    pub points: Vec<Sample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningResults {
    pub pv_decay: TimeDecayFit,
    pub wind_decay: TimeDecayFit,
    pub battery_decay: TimeDecayFit,
    pub battery_target_year: f64,
    pub battery_cost_at_target_usd_per_kwh: f64,
    pub pv_curve: LearningCurveSummary,
    pub wind_curve: LearningCurveSummary,
    /// `None` when the fitted lines are parallel.
    pub curve_crossing: Option<CurveCrossing>,
    /// PV cost at the stated 2030 PV generation.
    pub pv_cost_at_stated_2030: CostEstimate,
    /// PV and wind cost at their projected 2030 generation.
    pub pv_cost_at_projected_2030: CostEstimate,
    pub wind_cost_at_projected_2030: CostEstimate,
    pub swanson_learning_rate: f64,
    pub swanson_log10_slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaRecord {
    pub demand_name: String,
    #[serde(flatten)]
    pub budget: AreaBudget,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialRecord {
    pub potential_name: String,
    pub potential_twh_per_year: f64,
    pub demand_name: String,
    pub demand_twh_per_year: f64,
    #[serde(flatten)]
    pub share: PotentialShare,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaTableRow {
    pub depth_m: f64,
    pub area_mkm2: f64,
    pub potential_twh_per_year: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffshoreExtrapolation {
    pub table: Vec<AreaTableRow>,
    pub target_depth_m: f64,
    pub potential_twh_per_year: f64,
    pub registered_twh_per_year: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetResults {
    pub areas: Vec<AreaRecord>,
    pub potentials: Vec<PotentialRecord>,
    pub offshore_extrapolation: OffshoreExtrapolation,
}

fn units() -> BTreeMap<&'static str, &'static str> {
    [
        ("installed_power", "GW"),
        ("generation", "TWh/yr"),
        ("demand", "TWh/yr"),
        ("lcoe", "USD/MWh"),
        ("battery_cost", "USD/kWh"),
        ("area", "km2"),
        ("density", "MW/km2"),
        ("year", "calendar year, fractional"),
        ("ln_slope", "1/yr"),
        ("doubling_time", "yr"),
        ("capacity_factor", "dimensionless"),
        ("fraction", "dimensionless"),
        ("share_percent", "%"),
        ("learning_rate", "fraction per doubling"),
        ("annual_factor", "cost multiplier per yr"),
        ("sea_area", "million km2"),
    ]
    .into_iter()
    .collect()
}

struct Inputs {
    pv: CapacitySeries,
    wind: CapacitySeries,
    offshore: CapacitySeries,
    hydro: CapacitySeries,
    lcoe_pv: CapacitySeries,
    lcoe_wind: CapacitySeries,
    battery: CapacitySeries,
}

fn load_inputs(config: &ScenarioConfig) -> Result<Inputs> {
    let base = config.base_dir.as_deref();
    let ds = &config.datasets;
    let power = |r: &str, tech: &str| {
        resolve(
            r,
            &SeriesSchema::new(QuantityKind::InstalledPower, Unit::Gw).technology(tech),
            base,
        )
    };
    let cost = |r: &str, tech: &str, unit| {
        resolve(
            r,
            &SeriesSchema::new(QuantityKind::UnitCost, unit).technology(tech),
            base,
        )
    };
    Ok(Inputs {
        pv: power(&ds.pv, "pv")?,
        wind: power(&ds.wind, "wind")?,
        offshore: power(&ds.offshore_wind, "offshore_wind")?,
        hydro: power(&ds.hydro, "hydro")?,
        lcoe_pv: cost(&ds.lcoe_pv, "pv", Unit::UsdPerMwh)?,
        lcoe_wind: cost(&ds.lcoe_wind, "wind", Unit::UsdPerMwh)?,
        battery: cost(&ds.battery, "battery", Unit::UsdPerKwh)?,
    })
}

fn generation(power_gw: f64, cf: f64) -> f64 {
    power_gw * cf * HOURS_PER_YEAR / 1000.0
}

/// Runs every model on the configured datasets.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    config.validate()?;
    let inputs = load_inputs(config)?;
    let last_year = [&inputs.pv, &inputs.wind, &inputs.hydro]
        .iter()
        .map(|s| s.last_year())
        .fold(f64::NEG_INFINITY, f64::max);
    if !(config.horizon > last_year) {
        return Err(Error::ConfigInvalid(format!(
            "horizon {} must lie after the last data year {last_year}",
            config.horizon
        )));
    }
    let cfs = &config.capacity_factors;
    let w = &config.windows;

    let fits = Fits {
        pv: ExponentialSummary::new(fit_exponential(&inputs.pv, w.pv.into())?, cfs.pv)?,
        wind: WindFits {
            trend: ExponentialSummary::new(
                fit_exponential(&inputs.wind, YearWindow::FULL)?,
                cfs.wind,
            )?,
            rebound: ExponentialSummary::new(
                fit_exponential(&inputs.wind, w.wind_exponential.into())?,
                cfs.wind,
            )?,
            piecewise: {
                let fit = detect_changepoint(&inputs.wind, config.min_segment)?;
                PiecewiseSummary {
                    regime_change: fit.is_regime_change(config.changepoint_threshold),
                    significance_threshold: config.changepoint_threshold,
                    fit,
                }
            },
        },
        offshore_wind: {
            let fit = fit_exponential(&inputs.offshore, w.offshore_wind.into())?;
            OffshoreSummary {
                year_of_1_tw: fit.year_of_value(OFFSHORE_MILESTONE_GW),
                exponential: ExponentialSummary::new(fit, cfs.offshore_wind)?,
            }
        },
        hydro: HydroSummary {
            fit: fit_polynomial(&inputs.hydro, config.hydro_degree, w.hydro.into())?,
            capacity_factor: cfs.hydro,
        },
    };

    let profile =
        |name: &str, series: &CapacitySeries, cf: f64, model: crate::growthfit::GrowthModel| {
            TechnologyProfile::new(name, cf, series.clone(), Some(model))
        };
    let pv_profile = profile("pv", &inputs.pv, cfs.pv, fits.pv.fit.clone().into())?;
    let hydro_profile = profile(
        "hydro",
        &inputs.hydro,
        cfs.hydro,
        fits.hydro.fit.clone().into(),
    )?;
    let wind_profile = |t: WindTreatment| {
        profile(
            "wind",
            &inputs.wind,
            cfs.wind,
            fits.wind_projection(t).clone().into(),
        )
    };

    let thresholds = config.selected_thresholds();
    let mut crossings = Vec::new();
    let mut push_crossings = |scenario: &str,
                              treatment: Option<WindTreatment>,
                              profiles: Vec<TechnologyProfile>|
     -> Result<()> {
        let projection = combine(profiles)?;
        for t in &thresholds {
            let r = crossing_year(&projection, t, config.horizon)?;
            crossings.push(CrossingRecord {
                scenario: scenario.to_string(),
                wind_treatment: treatment,
                headline: treatment.is_none_or(|x| x == config.wind_treatment),
                threshold: t.name.clone(),
                level_twh_per_year: t.level,
                stated_year: t.stated_year,
                crossing: r.crossing,
                horizon: r.horizon_used,
            });
        }
        Ok(())
    };
    push_crossings("pv", None, vec![pv_profile.clone()])?;
    let mut mixes = Vec::new();
    let mut crossovers = Vec::new();
    for t in WindTreatment::ALL {
        let wind = wind_profile(t)?;
        let headline = t == config.wind_treatment;
        push_crossings("pv+wind", Some(t), vec![pv_profile.clone(), wind.clone()])?;
        push_crossings(
            "pv+wind+hydro",
            Some(t),
            vec![pv_profile.clone(), wind.clone(), hydro_profile.clone()],
        )?;
        let three = combine(vec![
            pv_profile.clone(),
            wind.clone(),
            hydro_profile.clone(),
        ])?;
        for &year in &config.mix_years {
            let entries = mix_at_year(&three, year)?;
            mixes.push(MixRecord {
                year,
                wind_treatment: t,
                headline,
                total_twh_per_year: entries.iter().map(|e| e.generation).sum(),
                entries,
            });
        }
        let year = match pv_wind_generation_crossover(&pv_profile, &wind) {
            Ok(y) => Some(y),
            Err(Error::ParallelGrowth) => None,
            Err(e) => return Err(e),
        };
        crossovers.push(CrossoverRecord {
            wind_treatment: t,
            headline,
            year,
        });
    }

    let learning = learning_results(
        config,
        &inputs,
        &pv_profile,
        &wind_profile(config.wind_treatment)?,
    )?;
    let budget = budget_results(cfs.pv)?;

    let settings = Settings {
        horizon: config.horizon,
        headline_wind_treatment: config.wind_treatment,
        changepoint_threshold: config.changepoint_threshold,
        min_segment: config.min_segment,
        hydro_degree: config.hydro_degree,
        capacity_factors: [
            ("pv", cfs.pv),
            ("wind", cfs.wind),
            ("offshore_wind", cfs.offshore_wind),
            ("hydro", cfs.hydro),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect(),
    };
    let series = vec![
        SeriesRecord::from_series("pv", &inputs.pv),
        SeriesRecord::from_series("wind", &inputs.wind),
        SeriesRecord::from_series("offshore_wind", &inputs.offshore),
        SeriesRecord::from_series("hydro", &inputs.hydro),
        SeriesRecord::from_series("lcoe_pv", &inputs.lcoe_pv),
        SeriesRecord::from_series("lcoe_wind", &inputs.lcoe_wind),
        SeriesRecord::from_series("battery", &inputs.battery),
    ];
    let mut report = ScenarioReport {
        schema: SCHEMA_VERSION.to_string(),
        units: units(),
        settings,
        series,
        fits,
        crossings,
        mixes,
        crossovers,
        learning,
        budget,
        discrepancies: Vec::new(),
    };
    report.discrepancies = build_discrepancies(&report)?;
    Ok(report)
}

fn learning_results(
    config: &ScenarioConfig,
    inputs: &Inputs,
    pv: &TechnologyProfile,
    wind: &TechnologyProfile,
) -> Result<LearningResults> {
    let pv_costs = CostSeries::from_series(&inputs.lcoe_pv)?;
    let wind_costs = CostSeries::from_series(&inputs.lcoe_wind)?;
    let battery = CostSeries::from_series(&inputs.battery)?;
    let battery_decay = fit_time_decay(&battery)?;

    let curve = |costs: &CostSeries, profile: &TechnologyProfile| -> Result<LearningCurveSummary> {
        let joined = join_cost_to_generation(costs, &series_to_generation(profile)?)?;
        let fit = fit_learning_curve(&joined)?;
        Ok(LearningCurveSummary {
            learning_rate: learning_rate(&fit)?,
            points: joined.samples().to_vec(),
            fit,
        })
    };
    let pv_curve = curve(&pv_costs, pv)?;
    let wind_curve = curve(&wind_costs, wind)?;
    let crossing = match curve_crossing(&pv_curve.fit, &wind_curve.fit) {
        Ok(c) => Some(c),
        Err(Error::ParallelLines) => None,
        Err(e) => return Err(e),
    };
    let projected =
        |p: &TechnologyProfile| p.projected_generation(2030.0).expect("profile has a model");
    let swanson_log10_slope = (1.0 - SWANSON_LEARNING_RATE).log2();
    Ok(LearningResults {
        pv_decay: fit_time_decay(&pv_costs)?,
        wind_decay: fit_time_decay(&wind_costs)?,
        battery_target_year: config.battery_target_year,
        battery_cost_at_target_usd_per_kwh: battery_decay.cost(config.battery_target_year),
        battery_decay,
        pv_cost_at_stated_2030: cost_at(&pv_curve.fit, stated::PV_2030)?,
        pv_cost_at_projected_2030: cost_at(&pv_curve.fit, projected(pv))?,
        wind_cost_at_projected_2030: cost_at(&wind_curve.fit, projected(wind))?,
        pv_curve,
        wind_curve,
        curve_crossing: crossing,
        swanson_learning_rate: slope_to_learning_rate(swanson_log10_slope)?,
        swanson_log10_slope,
    })
}

/// Demand levels the budgets are evaluated at.
const BUDGET_DEMANDS: [&str; 5] = [
    "electric_threshold_fig5",
    "electric_demand_2030",
    "reduced_primary_2030",
    "primary_demand_2030",
    "primary_threshold_fig5",
];

fn budget_results(cf_pv: f64) -> Result<BudgetResults> {
    let reg = ConstantsRegistry;
    let density = reg.value("pv_density");
    let areas = BUDGET_DEMANDS
        .iter()
        .map(|&name| {
            Ok(AreaRecord {
                demand_name: name.to_string(),
                budget: area_budget(reg.value(name), density, cf_pv)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs = [
        ("wind_total_potential_as_stated", "electric_demand_2030"),
        ("wind_total_potential_as_stated", "primary_demand_2030"),
        ("wind_total_potential_as_stated", "reduced_primary_2030"),
        ("onshore_wind_potential", "electric_demand_2030"),
        ("onshore_wind_potential", "primary_demand_2030"),
        ("offshore_50m", "electric_demand_2030"),
        ("offshore_1000m", "primary_demand_2030"),
    ];
    let potentials = pairs
        .iter()
        .map(|&(pot, demand)| {
            let p = ResourcePotential::registered(pot, "")?;
            let d = reg.value(demand);
            Ok(PotentialRecord {
                potential_name: pot.to_string(),
                potential_twh_per_year: p.annual_potential,
                demand_name: demand.to_string(),
                demand_twh_per_year: d,
                share: potential_fraction(d, &p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let table = offshore_area_table()?;
    let (target_depth_m, potential) = extrapolate_area_table(&table)?;
    Ok(BudgetResults {
        areas,
        potentials,
        offshore_extrapolation: OffshoreExtrapolation {
            table: table
                .iter()
                .map(|r: &AreaPotentialRow| AreaTableRow {
                    depth_m: r.depth_m,
                    area_mkm2: r.area,
                    potential_twh_per_year: r.potential,
                })
                .collect(),
            target_depth_m,
            potential_twh_per_year: potential,
            registered_twh_per_year: reg.value("offshore_1000m"),
        },
    })
}

/// Literal values stated for the scenario, compared in the discrepancy table.
mod stated {
    pub const PV_AREA_ELECTRIC: f64 = 357_667.0;
    pub const PV_AREA_PRIMARY: f64 = 2.015e6;
    pub const DESERT_ELECTRIC_PCT: f64 = 1.21;
    pub const DESERT_PRIMARY_PCT: f64 = 6.83;
    pub const DESERT_REDUCED_PCT: f64 = 3.93;
    pub const WIND_ELECTRIC_PCT: f64 = 11.59;
    pub const WIND_PRIMARY_PCT: f64 = 61.63;
    pub const WIND_REDUCED_PCT: f64 = 35.44;
    pub const WIND_TOTAL: f64 = 301_775.0;
    pub const REDUCED_PRIMARY: f64 = 106_950.0;
    pub const ONSHORE_TIMES_PRIMARY: f64 = 3.7;
    pub const ONSHORE_TIMES_ELECTRIC: f64 = 19.9;
    pub const OFFSHORE50_TIMES_ELECTRIC: f64 = 2.64;
    pub const OFFSHORE1000_TIMES_PRIMARY: f64 = 1.6;
    pub const HYDRO_DEVELOPED: f64 = 6.5;
    pub const PV_2025: f64 = 15_000.0;
    pub const WIND_2025: f64 = 11_700.0;
    pub const HYDRO_2025: f64 = 6_300.0;
    pub const TOTAL_2025: f64 = 33_000.0;
    pub const PV_2030: f64 = 75_500.0;
    pub const WIND_2030: f64 = 31_100.0;
    pub const HYDRO_2030: f64 = 6_500.0;
    pub const BATTERY_2030: f64 = 10.0;
    pub const OFFSHORE_1TW_YEAR: f64 = 2032.0;
    pub const CROSSOVER_YEAR: f64 = 2024.0;
    pub const PV_WIND_ELECTRIC_YEAR: f64 = 2026.0;
    pub const PV_WIND_HYDRO_ELECTRIC_YEAR: f64 = 2025.0;
    pub const REDUCED_PRIMARY_YEAR: f64 = 2030.0;
    pub const PV_ELECTRIC_YEAR: f64 = 2027.0;
    pub const PV_PRIMARY_YEAR: f64 = 2036.5;
    pub const PV_ELECTRIC_EARLY_YEAR: f64 = 2032.0;
}

impl ScenarioReport {
    pub fn area(&self, demand_name: &str) -> Option<&AreaBudget> {
        self.budget
            .areas
            .iter()
            .find(|a| a.demand_name == demand_name)
            .map(|a| &a.budget)
    }

    pub fn potential(&self, potential: &str, demand: &str) -> Option<&PotentialRecord> {
        self.budget
            .potentials
            .iter()
            .find(|p| p.potential_name == potential && p.demand_name == demand)
    }

    /// Crossing year of a combination; `wind_treatment` is ignored for
    /// combinations without wind.
    pub fn crossing(
        &self,
        scenario: &str,
        treatment: Option<WindTreatment>,
        threshold: &str,
    ) -> Option<&CrossingRecord> {
        self.crossings.iter().find(|c| {
            c.scenario == scenario
                && c.threshold == threshold
                && (c.wind_treatment.is_none() || c.wind_treatment == treatment)
        })
    }

    pub fn mix(&self, year: f64, treatment: WindTreatment) -> Option<&MixRecord> {
        self.mixes
            .iter()
            .find(|m| m.year == year && m.wind_treatment == treatment)
    }

    pub fn crossover(&self, treatment: WindTreatment) -> Option<f64> {
        self.crossovers
            .iter()
            .find(|c| c.wind_treatment == treatment)
            .and_then(|c| c.year)
    }

    pub fn series(&self, name: &str) -> Option<&SeriesRecord> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

fn build_discrepancies(r: &ScenarioReport) -> Result<Vec<Discrepancy>> {
    use stated::*;
    let reg = ConstantsRegistry;
    let cite = |name: &str| reg.get(name).map(|c| c.citation).unwrap_or_default();
    let area = |d: &str| r.area(d).map(|a| a.required_area);
    let desert_pct = |d: &str| r.area(d).map(|a| 100.0 * a.fraction);
    let pot = |p: &str, d: &str| r.potential(p, d).map(|x| x.share);
    let headline = Some(r.settings.headline_wind_treatment);
    let cross = |s: &str, th: &str| {
        let t = if s == "pv" { None } else { headline };
        r.crossing(s, t, th).and_then(|c| c.crossing.year())
    };
    let mix = |year: f64, tech: &str| {
        r.mix(year, r.settings.headline_wind_treatment)
            .and_then(|m| m.entries.iter().find(|e| e.technology == tech))
            .map(|e| e.generation)
    };
    let hydro_now = {
        let f = &r.fits.hydro;
        let last = f.fit.fit_window.1;
        generation(extrapolate(&f.fit, last)?.value, f.capacity_factor)
    };

    let appendix = "desert-area budget: Wikipedia 2021 desert area, EIA 2020 capacity factor, utility PV plant density";
    let mix_cite = "stated unconstrained-growth generation mix";
    let mut rows = vec![
        Discrepancy::new(
            "pv_area_electric_vs_35k",
            "PV area for electric demand (35,000 TWh/yr)",
            PV_AREA_ELECTRIC,
            area("electric_demand_2030"),
            "km2",
            appendix,
        ),
        Discrepancy::new(
            "pv_area_electric_vs_33k",
            "PV area for electric demand (33,000 TWh/yr)",
            PV_AREA_ELECTRIC,
            area("electric_threshold_fig5"),
            "km2",
            appendix,
        ),
        Discrepancy::new(
            "pv_area_primary",
            "PV area for primary demand (186,000 TWh/yr)",
            PV_AREA_PRIMARY,
            area("primary_demand_2030"),
            "km2",
            appendix,
        ),
        Discrepancy::new(
            "desert_share_electric",
            "desert share for electric demand",
            DESERT_ELECTRIC_PCT,
            desert_pct("electric_demand_2030"),
            "%",
            appendix,
        ),
        Discrepancy::new(
            "desert_share_primary",
            "desert share for primary demand",
            DESERT_PRIMARY_PCT,
            desert_pct("primary_demand_2030"),
            "%",
            appendix,
        ),
        Discrepancy::new(
            "desert_share_reduced",
            "desert share for reduced primary demand",
            DESERT_REDUCED_PCT,
            desert_pct("reduced_primary_2030"),
            "%",
            appendix,
        ),
        Discrepancy::new(
            "wind_share_electric",
            "wind potential share for electric demand",
            WIND_ELECTRIC_PCT,
            pot("wind_total_potential_as_stated", "electric_demand_2030")
                .map(|s| 100.0 * s.fraction),
            "%",
            cite("wind_total_potential_as_stated"),
        ),
        Discrepancy::new(
            "wind_share_primary",
            "wind potential share for primary demand",
            WIND_PRIMARY_PCT,
            pot("wind_total_potential_as_stated", "primary_demand_2030")
                .map(|s| 100.0 * s.fraction),
            "%",
            cite("wind_total_potential_as_stated"),
        ),
        Discrepancy::new(
            "wind_share_reduced",
            "wind potential share for reduced primary demand",
            WIND_REDUCED_PCT,
            pot("wind_total_potential_as_stated", "reduced_primary_2030")
                .map(|s| 100.0 * s.fraction),
            "%",
            cite("wind_total_potential_as_stated"),
        ),
        Discrepancy::new(
            "wind_total_potential",
            "onshore plus offshore (<1000 m) wind potential",
            WIND_TOTAL,
            Some(reg.value("onshore_wind_potential") + reg.value("offshore_1000m")),
            "TWh/yr",
            cite("wind_total_potential_as_stated"),
        ),
        Discrepancy::new(
            "reduced_primary_demand",
            "primary demand after efficiency reduction",
            REDUCED_PRIMARY,
            Some(reduced_primary(reg.value("primary_demand_2030"))?),
            "TWh/yr",
            cite("reduced_primary_2030"),
        ),
        Discrepancy::new(
            "onshore_times_primary",
            "onshore potential over primary demand",
            ONSHORE_TIMES_PRIMARY,
            pot("onshore_wind_potential", "primary_demand_2030").map(|s| s.times_over),
            "times",
            cite("onshore_wind_potential"),
        ),
        Discrepancy::new(
            "onshore_times_electric",
            "onshore potential over electric demand",
            ONSHORE_TIMES_ELECTRIC,
            pot("onshore_wind_potential", "electric_demand_2030").map(|s| s.times_over),
            "times",
            cite("onshore_wind_potential"),
        ),
        Discrepancy::new(
            "offshore50_times_electric",
            "offshore (<50 m) potential over electric demand",
            OFFSHORE50_TIMES_ELECTRIC,
            pot("offshore_50m", "electric_demand_2030").map(|s| s.times_over),
            "times",
            cite("offshore_50m"),
        ),
        Discrepancy::new(
            "offshore1000_times_primary",
            "offshore (<1000 m) potential over primary demand",
            OFFSHORE1000_TIMES_PRIMARY,
            pot("offshore_1000m", "primary_demand_2030").map(|s| s.times_over),
            "times",
            cite("offshore_1000m"),
        ),
        Discrepancy::new(
            "offshore_1000m_extrapolated",
            "offshore (<1000 m) potential from the area table",
            reg.value("offshore_1000m"),
            Some(r.budget.offshore_extrapolation.potential_twh_per_year),
            "TWh/yr",
            cite("offshore_1000m"),
        ),
        Discrepancy::new(
            "hydro_developed",
            "developed hydro generation vs fitted hydro generation at last data year",
            HYDRO_DEVELOPED,
            Some(hydro_now),
            "TWh/yr",
            cite("hydro_developed_potential"),
        ),
        Discrepancy::new(
            "pv_wind_electric_year",
            "PV+wind crossing of 33,000 TWh/yr",
            PV_WIND_ELECTRIC_YEAR,
            cross("pv+wind", "electric_threshold_fig5"),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "pv_wind_hydro_electric_year",
            "PV+wind+hydro crossing of 33,000 TWh/yr",
            PV_WIND_HYDRO_ELECTRIC_YEAR,
            cross("pv+wind+hydro", "electric_threshold_fig5"),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "reduced_primary_year",
            "PV+wind+hydro crossing of 106,950 TWh/yr",
            REDUCED_PRIMARY_YEAR,
            cross("pv+wind+hydro", "reduced_primary_2030"),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "pv_electric_year",
            "PV-only crossing of 33,000 TWh/yr",
            PV_ELECTRIC_YEAR,
            cross("pv", "electric_threshold_fig5"),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "pv_primary_year",
            "PV-only crossing of 198,000 TWh/yr",
            PV_PRIMARY_YEAR,
            cross("pv", "primary_threshold_fig5"),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "pv_electric_year_early_claim",
            "PV-only crossing of 35,000 TWh/yr (growth section claim)",
            PV_ELECTRIC_EARLY_YEAR,
            cross("pv", "electric_demand_2030"),
            "year",
            "stated PV-only crossing year",
        ),
        Discrepancy::new(
            "pv_wind_crossover_year",
            "PV generation overtakes wind",
            CROSSOVER_YEAR,
            r.crossover(r.settings.headline_wind_treatment),
            "year",
            "stated crossing year",
        ),
        Discrepancy::new(
            "offshore_1tw_year",
            "offshore wind reaches 1 TW installed",
            OFFSHORE_1TW_YEAR,
            Some(r.fits.offshore_wind.year_of_1_tw),
            "year",
            "stated offshore milestone year",
        ),
        Discrepancy::new(
            "mix_2025_pv",
            "PV generation in 2025",
            PV_2025,
            mix(2025.0, "pv"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2025_wind",
            "wind generation in 2025",
            WIND_2025,
            mix(2025.0, "wind"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2025_hydro",
            "hydro generation in 2025",
            HYDRO_2025,
            mix(2025.0, "hydro"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2025_total",
            "total generation in 2025",
            TOTAL_2025,
            r.mix(2025.0, r.settings.headline_wind_treatment)
                .map(|m| m.total_twh_per_year),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2030_pv",
            "PV generation in 2030",
            PV_2030,
            mix(2030.0, "pv"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2030_wind",
            "wind generation in 2030",
            WIND_2030,
            mix(2030.0, "wind"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "mix_2030_hydro",
            "hydro generation in 2030",
            HYDRO_2030,
            mix(2030.0, "hydro"),
            "TWh/yr",
            mix_cite,
        ),
        Discrepancy::new(
            "battery_cost_2030",
            "lithium-ion pack cost in 2030",
            BATTERY_2030,
            Some(r.learning.battery_decay.cost(2030.0)),
            "USD/kWh",
            "battery cost outlook (BloombergNEF 2019)",
        ),
        Discrepancy::new(
            "pv_learning_rate",
            "module-price learning rate vs PV LCOE learning rate",
            SWANSON_LEARNING_RATE,
            Some(r.learning.pv_curve.learning_rate),
            "fraction per doubling",
            "Swanson's law",
        ),
    ];
    discrepancy::sort_discrepancies(&mut rows);
    Ok(rows)
}

/// Generation (TWh/yr) of a fitted technology at `year`.
pub fn projected_generation(model: &dyn Model, capacity_factor: f64, year: f64) -> f64 {
    generation(model.value_at(year).max(0.0), capacity_factor)
}
