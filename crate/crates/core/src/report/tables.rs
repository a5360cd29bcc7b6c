//! CSV views of report sections. Every cell is copied from a report field.

use crate::error::{Error, Result};
use crate::scenario::Crossing;

use super::ScenarioReport;

fn write(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn num(v: f64) -> String {
    v.to_string()
}

pub fn crossings_csv(r: &ScenarioReport) -> Result<String> {
    let rows = r
        .crossings
        .iter()
        .map(|c| {
            let (status, year) = match c.crossing {
                Crossing::Year { year } => ("year", year),
                Crossing::AlreadySatisfied { at } => ("already_satisfied", at),
                Crossing::NotReached { by } => ("not_reached", by),
            };
            vec![
                c.scenario.clone(),
                c.wind_treatment
                    .map(|t| t.as_str().to_string())
                    .unwrap_or_default(),
                c.headline.to_string(),
                c.threshold.clone(),
                num(c.level_twh_per_year),
                num(c.stated_year),
                status.to_string(),
                num(year),
            ]
        })
        .collect();
    write(
        &[
            "scenario",
            "wind_treatment",
            "headline",
            "threshold",
            "level_twh_per_year",
            "stated_year",
            "status",
            "year",
        ],
        rows,
    )
}

pub fn mixes_csv(r: &ScenarioReport) -> Result<String> {
    let rows = r
        .mixes
        .iter()
        .flat_map(|m| {
            m.entries.iter().map(move |e| {
                vec![
                    num(m.year),
                    m.wind_treatment.as_str().to_string(),
                    m.headline.to_string(),
                    e.technology.clone(),
                    num(e.generation),
                    num(e.share_percent),
                ]
            })
        })
        .collect();
    write(
        &[
            "year",
            "wind_treatment",
            "headline",
            "technology",
            "generation_twh_per_year",
            "share_percent",
        ],
        rows,
    )
}

pub fn fits_csv(r: &ScenarioReport) -> Result<String> {
    let f = &r.fits;
    let mut rows = Vec::new();
    let mut exp = |name: &str, s: &super::ExponentialSummary| {
        rows.push(vec![
            name.to_string(),
            num(s.fit.fit_window.0),
            num(s.fit.fit_window.1),
            num(s.fit.ln_slope),
            num(s.doubling_time_years),
            num(s.fit.r_squared_logspace),
        ]);
    };
    exp("pv", &f.pv);
    exp("wind_trend", &f.wind.trend);
    exp("wind_rebound", &f.wind.rebound);
    exp("offshore_wind", &f.offshore_wind.exponential);
    for (name, side) in [
        ("wind_left", &f.wind.piecewise.fit.left),
        ("wind_right", &f.wind.piecewise.fit.right),
    ] {
        rows.push(vec![
            name.to_string(),
            num(side.fit_window.0),
            num(side.fit_window.1),
            num(side.ln_slope),
            num(std::f64::consts::LN_2 / side.ln_slope),
            num(side.r_squared_logspace),
        ]);
    }
    write(
        &[
            "fit",
            "window_start",
            "window_end",
            "ln_slope_per_year",
            "doubling_time_years",
            "r_squared_logspace",
        ],
        rows,
    )
}
