//! Datasets shipped with the crate. They are compiled in, so `bundled:NAME`
//! references resolve without touching the filesystem.

use std::path::Path;

use crate::error::{Error, Result};

use super::series::{load_capacity_series, CapacitySeries, QuantityKind, SeriesSchema, Unit};

pub struct Bundled {
    pub name: &'static str,
    pub text: &'static str,
    pub kind: QuantityKind,
    pub unit: Unit,
}

pub static BUNDLED: &[Bundled] = &[
    Bundled {
        name: "pv_installed",
        text: include_str!("../../data/pv_installed.csv"),
        kind: QuantityKind::InstalledPower,
        unit: Unit::Gw,
    },
    Bundled {
        name: "wind_installed",
        text: include_str!("../../data/wind_installed.csv"),
        kind: QuantityKind::InstalledPower,
        unit: Unit::Gw,
    },
    Bundled {
        name: "offshore_installed",
        text: include_str!("../../data/offshore_installed.csv"),
        kind: QuantityKind::InstalledPower,
        unit: Unit::Gw,
    },
    Bundled {
        name: "hydro_installed",
        text: include_str!("../../data/hydro_installed.csv"),
        kind: QuantityKind::InstalledPower,
        unit: Unit::Gw,
    },
    Bundled {
        name: "lcoe_pv",
        text: include_str!("../../data/lcoe_pv.csv"),
        kind: QuantityKind::UnitCost,
        unit: Unit::UsdPerMwh,
    },
    Bundled {
        name: "lcoe_wind",
        text: include_str!("../../data/lcoe_wind.csv"),
        kind: QuantityKind::UnitCost,
        unit: Unit::UsdPerMwh,
    },
    Bundled {
        name: "battery_pack",
        text: include_str!("../../data/battery_pack.csv"),
        kind: QuantityKind::UnitCost,
        unit: Unit::UsdPerKwh,
    },
];

pub const OFFSHORE_AREA_TABLE: &str = include_str!("../../data/offshore_area.csv");

pub fn bundled(name: &str) -> Result<CapacitySeries> {
    let entry = BUNDLED
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::DatasetMissing(name.to_string()))?;
    load_capacity_series(
        entry.text.as_bytes(),
        &SeriesSchema::new(entry.kind, entry.unit),
    )
}

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|b| b.name).collect()
}

/// Resolves `bundled:NAME` or a filesystem path. Paths are read with the
/// given schema; relative paths are taken relative to `base`.
pub fn resolve(
    reference: &str,
    schema: &SeriesSchema,
    base: Option<&Path>,
) -> Result<CapacitySeries> {
    if let Some(name) = reference.strip_prefix("bundled:") {
        let series = bundled(name)?;
        if series.unit() != schema.unit {
            return Err(Error::UnitMismatch {
                expected: schema.unit.to_string(),
                found: series.unit().to_string(),
            });
        }
        return Ok(series);
    }
    let path = match base {
        Some(dir) if Path::new(reference).is_relative() => dir.join(reference),
        _ => Path::new(reference).to_path_buf(),
    };
    let file = std::fs::File::open(&path)
        .map_err(|_| Error::DatasetMissing(path.display().to_string()))?;
    load_capacity_series(std::io::BufReader::new(file), schema)
}

/// One row of the offshore potential versus sea-area table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaPotentialRow {
    pub depth_m: f64,
    pub area: f64,
    pub potential: Option<f64>,
}

pub fn offshore_area_table() -> Result<Vec<AreaPotentialRow>> {
    parse_area_table(OFFSHORE_AREA_TABLE)
}

pub fn parse_area_table(text: &str) -> Result<Vec<AreaPotentialRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("depth") {
            continue;
        }
        let bad = |message: &str| Error::Parse {
            line: idx + 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(bad("expected depth_m,area,potential"));
        }
        let depth_m = fields[0].parse().map_err(|_| bad("bad depth"))?;
        let area = fields[1].parse().map_err(|_| bad("bad area"))?;
        let potential = if fields[2].is_empty() {
            None
        } else {
            Some(fields[2].parse().map_err(|_| bad("bad potential"))?)
        };
        rows.push(AreaPotentialRow {
            depth_m,
            area,
            potential,
        });
    }
    Ok(rows)
}
