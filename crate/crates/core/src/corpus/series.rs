//! Yearly series of installed power, generation or unit cost, plus the
//! plain-text file format they are stored in.
//!
//! File grammar (UTF-8, one record per line):
//!
//! ```text
//! file      := header* column-row? data-row*
//! header    := "#" [" "] (meta | provenance)
//! meta      := ("technology" | "kind" | "unit") ":" " "* text
//! column-row:= "year,value" [",unit"]
//! data-row  := year "," value ["," unit]
//! ```
//!
//! Blank lines are ignored. Values are converted to the canonical unit of
//! their dimension at load time (`MW`/`TW` to `GW`, `GWh_per_year`/`PWh_per_year`
//! to `TWh_per_year`). Rows are sorted by year; duplicate years are rejected.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityKind {
    InstalledPower,
    AnnualGeneration,
    UnitCost,
}

impl QuantityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QuantityKind::InstalledPower => "installed_power",
            QuantityKind::AnnualGeneration => "annual_generation",
            QuantityKind::UnitCost => "unit_cost",
        }
    }
}

impl FromStr for QuantityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "installed_power" => Ok(QuantityKind::InstalledPower),
            "annual_generation" => Ok(QuantityKind::AnnualGeneration),
            "unit_cost" => Ok(QuantityKind::UnitCost),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown quantity kind `{other}`"),
            }),
        }
    }
}

impl fmt::Display for QuantityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Canonical units. Everything inside the engine is expressed in one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "GW")]
    Gw,
    #[serde(rename = "TWh_per_year")]
    TwhPerYear,
    #[serde(rename = "USD_per_MWh")]
    UsdPerMwh,
    #[serde(rename = "USD_per_kWh")]
    UsdPerKwh,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Gw => "GW",
            Unit::TwhPerYear => "TWh_per_year",
            Unit::UsdPerMwh => "USD_per_MWh",
            Unit::UsdPerKwh => "USD_per_kWh",
        }
    }

    /// Parses a unit as written in a file and returns the canonical unit
    /// together with the factor that converts file values into it.
    pub fn parse_with_scale(s: &str) -> Option<(Unit, f64)> {
        Some(match s {
            "MW" => (Unit::Gw, 1e-3),
            "GW" => (Unit::Gw, 1.0),
            "TW" => (Unit::Gw, 1e3),
            "GWh_per_year" => (Unit::TwhPerYear, 1e-3),
            "TWh_per_year" => (Unit::TwhPerYear, 1.0),
            "PWh_per_year" => (Unit::TwhPerYear, 1e3),
            "USD_per_MWh" => (Unit::UsdPerMwh, 1.0),
            "USD_per_kWh" => (Unit::UsdPerKwh, 1.0),
            _ => return None,
        })
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub year: f64,
    pub value: f64,
}

impl Sample {
    pub fn new(year: f64, value: f64) -> Self {
        Sample { year, value }
    }
}

/// What a caller expects a series file to contain.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSchema {
    pub kind: QuantityKind,
    pub unit: Unit,
    /// Reject zero values (series will be fitted in log space).
    pub log_fit: bool,
    /// Used when the file does not name its technology.
    pub technology: Option<String>,
}

impl SeriesSchema {
    pub fn new(kind: QuantityKind, unit: Unit) -> Self {
        SeriesSchema {
            kind,
            unit,
            log_fit: kind != QuantityKind::AnnualGeneration,
            technology: None,
        }
    }

    pub fn allow_zero(mut self) -> Self {
        self.log_fit = false;
        self
    }

    pub fn technology(mut self, name: impl Into<String>) -> Self {
        self.technology = Some(name.into());
        self
    }
}

/// Validated, immutable yearly series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacitySeries {
    technology: String,
    kind: QuantityKind,
    unit: Unit,
    samples: Vec<Sample>,
    provenance: String,
}

impl CapacitySeries {
    /// Builds a series from samples in any order. Values must be
    /// nonnegative, strictly positive when `log_fit` is set.
    pub fn new(
        technology: impl Into<String>,
        kind: QuantityKind,
        unit: Unit,
        samples: Vec<Sample>,
        provenance: impl Into<String>,
        log_fit: bool,
    ) -> Result<Self> {
        let mut samples = samples;
        if samples.is_empty() {
            return Err(Error::EmptySeries);
        }
        for s in &samples {
            if !s.year.is_finite() || !s.value.is_finite() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("non-finite sample ({}, {})", s.year, s.value),
                });
            }
            if s.value < 0.0 || (log_fit && s.value <= 0.0) {
                return Err(Error::NonPositiveValue {
                    year: s.year,
                    value: s.value,
                });
            }
        }
        samples.sort_by(|a, b| a.year.total_cmp(&b.year));
        if let Some(w) = samples.windows(2).find(|w| w[0].year == w[1].year) {
            return Err(Error::DuplicateYear(w[0].year));
        }
        Ok(CapacitySeries {
            technology: technology.into(),
            kind,
            unit,
            samples,
            provenance: provenance.into(),
        })
    }

    /// Parses a file whose header declares `kind` and `unit`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_lines(text.lines().map(|l| Ok(l.to_string())), None)
    }

    pub fn technology(&self) -> &str {
        &self.technology
    }

    pub fn kind(&self) -> QuantityKind {
        self.kind
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first_year(&self) -> f64 {
        self.samples[0].year
    }

    pub fn last_year(&self) -> f64 {
        self.samples[self.samples.len() - 1].year
    }

    /// Samples with `start <= year <= end`; open ends when `None`.
    pub fn window(&self, start: Option<f64>, end: Option<f64>) -> Vec<Sample> {
        self.samples
            .iter()
            .filter(|s| start.is_none_or(|a| s.year >= a) && end.is_none_or(|b| s.year <= b))
            .copied()
            .collect()
    }

    pub fn value_at(&self, year: f64) -> Option<f64> {
        self.samples
            .iter()
            .find(|s| s.year == year)
            .map(|s| s.value)
    }

    /// Canonical text form; `parse(to_text())` reproduces the series.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# technology: {}\n", self.technology));
        out.push_str(&format!("# kind: {}\n", self.kind));
        out.push_str(&format!("# unit: {}\n", self.unit));
        if !self.provenance.is_empty() {
            for line in self.provenance.split('\n') {
                if line.is_empty() {
                    out.push_str("#\n");
                } else {
                    out.push_str("# ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
        out.push_str("year,value\n");
        for s in &self.samples {
            out.push_str(&format!("{},{}\n", s.year, s.value));
        }
        out
    }
}

/// Reads a series from a text stream, checking it against `schema`.
pub fn load_capacity_series<R: BufRead>(
    source: R,
    schema: &SeriesSchema,
) -> Result<CapacitySeries> {
    parse_lines(source.lines().map(|l| l.map_err(Error::from)), Some(schema))
}

fn parse_lines<I>(lines: I, schema: Option<&SeriesSchema>) -> Result<CapacitySeries>
where
    I: Iterator<Item = Result<String>>,
{
    let mut technology: Option<String> = None;
    let mut kind: Option<QuantityKind> = None;
    let mut declared: Option<(Unit, f64, String)> = None;
    let mut provenance: Vec<String> = Vec::new();
    let mut rows: Vec<(usize, f64, f64, Option<String>)> = Vec::new();

    for (idx, line) in lines.enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let body = comment.strip_prefix(' ').unwrap_or(comment);
            match body.split_once(':') {
                Some(("technology", v)) => technology = Some(v.trim().to_string()),
                Some(("kind", v)) => {
                    kind = Some(v.trim().parse().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("unknown quantity kind `{}`", v.trim()),
                    })?)
                }
                Some(("unit", v)) => {
                    let v = v.trim();
                    let (u, scale) = Unit::parse_with_scale(v).ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: format!("unknown unit `{v}`"),
                    })?;
                    declared = Some((u, scale, v.to_string()));
                }
                _ => provenance.push(body.to_string()),
            }
            continue;
        }
        if trimmed.to_ascii_lowercase().starts_with("year") {
            continue;
        }
        let mut fields = trimmed.split(',').map(str::trim);
        let year = parse_number(fields.next(), lineno, "year")?;
        let value = parse_number(fields.next(), lineno, "value")?;
        let unit = fields.next().filter(|u| !u.is_empty()).map(str::to_string);
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "too many fields".into(),
            });
        }
        rows.push((lineno, year, value, unit));
    }

    let kind = match (kind, schema) {
        (Some(k), Some(s)) if k != s.kind => {
            return Err(Error::UnitMismatch {
                expected: s.kind.to_string(),
                found: k.to_string(),
            })
        }
        (Some(k), _) => k,
        (None, Some(s)) => s.kind,
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                message: "header does not declare `# kind:`".into(),
            })
        }
    };

    let (unit, scale, unit_text) = match (declared, schema) {
        (Some((u, _, text)), Some(s)) if u != s.unit => {
            return Err(Error::UnitMismatch {
                expected: s.unit.to_string(),
                found: text,
            })
        }
        (Some(d), _) => d,
        (None, Some(s)) => (s.unit, 1.0, s.unit.to_string()),
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                message: "header does not declare `# unit:`".into(),
            })
        }
    };

    let mut samples = Vec::with_capacity(rows.len());
    for (_, year, value, row_unit) in rows {
        if let Some(ru) = row_unit {
            if ru != unit_text {
                return Err(Error::UnitMismatch {
                    expected: unit_text.clone(),
                    found: ru,
                });
            }
        }
        samples.push(Sample::new(year, value * scale));
    }

    let technology = technology
        .or_else(|| schema.and_then(|s| s.technology.clone()))
        .unwrap_or_else(|| "unnamed".to_string());
    let log_fit = schema.map_or(kind != QuantityKind::AnnualGeneration, |s| s.log_fit);
    CapacitySeries::new(
        technology,
        kind,
        unit,
        samples,
        provenance.join("\n"),
        log_fit,
    )
}

fn parse_number(field: Option<&str>, line: usize, what: &str) -> Result<f64> {
    let text = field.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    text.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("bad {what} `{text}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gw() -> SeriesSchema {
        SeriesSchema::new(QuantityKind::InstalledPower, Unit::Gw)
    }

    #[test]
    fn single_row_loads() {
        let s = load_capacity_series("2000,1.0\n".as_bytes(), &gw()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.samples()[0], Sample::new(2000.0, 1.0));
    }

    #[test]
    fn rows_are_sorted() {
        let s = load_capacity_series("2001,5\n2000,3\n".as_bytes(), &gw()).unwrap();
        assert_eq!(
            s.samples(),
            &[Sample::new(2000.0, 3.0), Sample::new(2001.0, 5.0)]
        );
    }

    #[test]
    fn rejects_bad_rows() {
        let err = load_capacity_series("2000,0\n".as_bytes(), &gw()).unwrap_err();
        assert!(matches!(err, Error::NonPositiveValue { .. }));
        let err = load_capacity_series("2000,-1\n".as_bytes(), &gw().allow_zero()).unwrap_err();
        assert!(matches!(err, Error::NonPositiveValue { .. }));
        let err = load_capacity_series("2000,1\n2000,2\n".as_bytes(), &gw()).unwrap_err();
        assert_eq!(err, Error::DuplicateYear(2000.0));
        let err = load_capacity_series("# only a comment\n".as_bytes(), &gw()).unwrap_err();
        assert_eq!(err, Error::EmptySeries);
        let err =
            load_capacity_series("# unit: TWh_per_year\n2000,1\n".as_bytes(), &gw()).unwrap_err();
        assert!(matches!(err, Error::UnitMismatch { .. }));
        let err = load_capacity_series("# unit: GW\n2000,1,GW\n2001,2,MW\n".as_bytes(), &gw())
            .unwrap_err();
        assert!(matches!(err, Error::UnitMismatch { .. }));
        let err = load_capacity_series("2000;1\n".as_bytes(), &gw()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn zero_allowed_for_generation() {
        let schema = SeriesSchema::new(QuantityKind::AnnualGeneration, Unit::TwhPerYear);
        let s = load_capacity_series("1990,0\n1991,2\n".as_bytes(), &schema).unwrap();
        assert_eq!(s.samples()[0].value, 0.0);
    }

    #[test]
    fn converts_to_canonical_unit() {
        let s = load_capacity_series("# unit: MW\n2000,1500\n".as_bytes(), &gw()).unwrap();
        assert_eq!(s.unit(), Unit::Gw);
        assert_eq!(s.samples()[0].value, 1.5);
    }

    #[test]
    fn header_metadata_and_provenance() {
        let text = "# technology: pv\n# kind: installed_power\n# unit: GW\n# from somewhere\n#\n# more\nyear,value\n2000,1\n";
        let s = CapacitySeries::parse(text).unwrap();
        assert_eq!(s.technology(), "pv");
        assert_eq!(s.provenance(), "from somewhere\n\nmore");
        assert_eq!(s.to_text(), text);
    }

    #[test]
    fn parse_requires_declared_kind() {
        assert!(matches!(
            CapacitySeries::parse("# unit: GW\n2000,1\n"),
            Err(Error::Parse { .. })
        ));
    }

    proptest! {
        #[test]
        fn text_round_trip_is_stable(
            start in 1950i32..2000,
            values in proptest::collection::vec(1e-3f64..1e6, 1..30),
        ) {
            let samples: Vec<Sample> = values
                .iter()
                .enumerate()
                .rev()
                .map(|(i, v)| Sample::new(f64::from(start) + i as f64 * 0.5, *v))
                .collect();
            let s = CapacitySeries::new("x", QuantityKind::InstalledPower, Unit::Gw, samples, "src", true).unwrap();
            let text = s.to_text();
            let back = CapacitySeries::parse(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
