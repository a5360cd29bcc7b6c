//! Scenario configuration. The file is TOML; every key is optional and the
//! defaults reproduce the reference setup:
//!
//! ```toml
//! horizon = 2050
//! changepoint_threshold = 0.5
//! min_segment = 3
//! wind_treatment = "trend"      # current | rebound | trend
//! hydro_degree = 2
//! thresholds = ["electric_threshold_fig5", "primary_threshold_fig5"]
//! mix_years = [2025, 2030]
//! out_dir = "out"
//!
//! [datasets]
//! pv = "bundled:pv_installed"   # or a path, relative to the config file
//!
//! [windows.pv]
//! start = 2000
//!
//! [capacity_factors]
//! pv = 0.256
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::growthfit::{YearWindow, DEFAULT_CHANGEPOINT_THRESHOLD};
use crate::scenario::{DemandThreshold, WindTreatment, DEFAULT_HORIZON};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub horizon: f64,
    pub changepoint_threshold: f64,
    pub min_segment: usize,
    /// Wind projection used for headline results.
    pub wind_treatment: WindTreatment,
    pub hydro_degree: usize,
    pub thresholds: Vec<String>,
    pub mix_years: Vec<f64>,
    pub battery_target_year: f64,
    pub out_dir: String,
    pub datasets: Datasets,
    pub windows: Windows,
    pub capacity_factors: CapacityFactors,
    /// Directory relative dataset paths are resolved against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Datasets {
    pub pv: String,
    pub wind: String,
    pub offshore_wind: String,
    pub hydro: String,
    pub lcoe_pv: String,
    pub lcoe_wind: String,
    pub battery: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowSpec {
    pub start: Option<f64>,
    pub end: Option<f64>,
}

impl From<WindowSpec> for YearWindow {
    fn from(w: WindowSpec) -> Self {
        YearWindow {
            start: w.start,
            end: w.end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Windows {
    pub pv: WindowSpec,
    /// Exponential regime of wind, used by the rebound treatment.
    pub wind_exponential: WindowSpec,
    pub offshore_wind: WindowSpec,
    pub hydro: WindowSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CapacityFactors {
    pub pv: f64,
    pub wind: f64,
    pub offshore_wind: f64,
    pub hydro: f64,
}

impl Default for Datasets {
    fn default() -> Self {
        Datasets {
            pv: "bundled:pv_installed".into(),
            wind: "bundled:wind_installed".into(),
            offshore_wind: "bundled:offshore_installed".into(),
            hydro: "bundled:hydro_installed".into(),
            lcoe_pv: "bundled:lcoe_pv".into(),
            lcoe_wind: "bundled:lcoe_wind".into(),
            battery: "bundled:battery_pack".into(),
        }
    }
}

impl Default for Windows {
    fn default() -> Self {
        Windows {
            pv: WindowSpec {
                start: Some(2000.0),
                end: None,
            },
            wind_exponential: WindowSpec {
                start: Some(1996.0),
                end: Some(2009.0),
            },
            offshore_wind: WindowSpec {
                start: Some(2009.0),
                end: None,
            },
            hydro: WindowSpec::default(),
        }
    }
}

impl Default for CapacityFactors {
    fn default() -> Self {
        let reg = ConstantsRegistry;
        CapacityFactors {
            pv: reg.value("cf_pv"),
            wind: reg.value("cf_wind"),
            offshore_wind: reg.value("cf_wind"),
            hydro: reg.value("cf_hydro"),
        }
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            horizon: DEFAULT_HORIZON,
            changepoint_threshold: DEFAULT_CHANGEPOINT_THRESHOLD,
            min_segment: 3,
            wind_treatment: WindTreatment::Trend,
            hydro_degree: 2,
            thresholds: DemandThreshold::registered()
                .into_iter()
                .map(|t| t.name)
                .collect(),
            mix_years: vec![2025.0, 2030.0],
            battery_target_year: 2030.0,
            out_dir: "out".into(),
            datasets: Datasets::default(),
            windows: Windows::default(),
            capacity_factors: CapacityFactors::default(),
            base_dir: None,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_toml(&text)?;
        config.base_dir = path.parent().map(Path::to_path_buf);
        Ok(config)
    }

    /// Checks that do not need the datasets.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigInvalid(m));
        if !self.horizon.is_finite() {
            return bad(format!("horizon must be finite, got {}", self.horizon));
        }
        if !(0.0..=1.0).contains(&self.changepoint_threshold) {
            return bad(format!(
                "changepoint_threshold must lie in [0, 1], got {}",
                self.changepoint_threshold
            ));
        }
        if self.min_segment < 3 {
            return bad(format!(
                "min_segment must be at least 3, got {}",
                self.min_segment
            ));
        }
        if self.hydro_degree == 0 {
            return bad("hydro_degree must be at least 1".into());
        }
        let cfs = &self.capacity_factors;
        for (name, cf) in [
            ("pv", cfs.pv),
            ("wind", cfs.wind),
            ("offshore_wind", cfs.offshore_wind),
            ("hydro", cfs.hydro),
        ] {
            if !(cf > 0.0 && cf <= 1.0) {
                return bad(format!(
                    "capacity factor for {name} must lie in (0, 1], got {cf}"
                ));
            }
        }
        for name in &self.thresholds {
            DemandThreshold::registered_by_name(name)
                .map_err(|_| Error::ConfigInvalid(format!("unknown threshold `{name}`")))?;
        }
        Ok(())
    }

    pub fn selected_thresholds(&self) -> Vec<DemandThreshold> {
        DemandThreshold::registered()
            .into_iter()
            .filter(|t| self.thresholds.contains(&t.name))
            .collect()
    }
}
