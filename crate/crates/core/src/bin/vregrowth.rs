use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use vregrowth::growthfit::{extrapolate, Model};
use vregrowth::report::{self, run_scenario, ScenarioConfig, ScenarioReport};
use vregrowth::scenario::WindTreatment;
use vregrowth::{Error, Result};

#[derive(Parser)]
#[command(
    name = "vregrowth",
    version,
    about = "Renewable power growth scenarios: fits, crossings, cost curves and budgets"
)]
struct Cli {
    /// Scenario configuration (TOML). Defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for written artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Last year searched for threshold crossings.
    #[arg(long, global = true)]
    horizon: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit summary of one technology (pv, wind, offshore_wind, hydro).
    Fit { tech: String },
    /// Installed power and generation of a technology in a given year.
    Project {
        tech: String,
        #[arg(long)]
        year: f64,
    },
    /// Crossing years of one threshold for every combination.
    Cross {
        #[arg(long)]
        threshold: String,
    },
    /// Generation mix of PV, wind and hydro in a given year.
    Mix {
        #[arg(long)]
        year: f64,
    },
    /// Cost decay fits, learning curves and their crossing.
    Learn,
    /// Land-area and wind-potential budgets.
    Budget,
    /// Run everything and write report.json, CSV tables and all figures.
    Report,
    /// Write one figure, or all when no id is given.
    Figures {
        #[arg(long)]
        id: Option<String>,
    },
}

fn load_config(cli: &Cli) -> Result<ScenarioConfig> {
    let mut config = match &cli.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(h) = cli.horizon {
        config.horizon = h;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.display().to_string();
    }
    Ok(config)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}

fn fit_json(r: &ScenarioReport, tech: &str) -> Result<serde_json::Value> {
    let f = &r.fits;
    Ok(match tech {
        "pv" => json!(f.pv),
        "wind" => json!(f.wind),
        "offshore_wind" => json!(f.offshore_wind),
        "hydro" => json!(f.hydro),
        other => return Err(Error::UnknownTechnology(other.to_string())),
    })
}

fn project(r: &ScenarioReport, tech: &str, year: f64) -> Result<serde_json::Value> {
    let f = &r.fits;
    let (model, cf): (&dyn Model, f64) = match tech {
        "pv" => (&f.pv.fit, f.pv.capacity_factor),
        "wind" => (
            f.wind_projection(r.settings.headline_wind_treatment),
            f.wind.trend.capacity_factor,
        ),
        "offshore_wind" => (
            &f.offshore_wind.exponential.fit,
            f.offshore_wind.exponential.capacity_factor,
        ),
        "hydro" => (&f.hydro.fit, f.hydro.capacity_factor),
        other => return Err(Error::UnknownTechnology(other.to_string())),
    };
    let e = extrapolate(model, year)?;
    Ok(json!({
        "technology": tech,
        "year": year,
        "installed_power_gw": e.value,
        "generation_twh_per_year": report::projected_generation(model, cf, year),
        "horizon_warning": e.horizon_warning,
    }))
}

fn run(cli: &Cli) -> Result<()> {
    let config = load_config(cli)?;
    let r = run_scenario(&config)?;
    let out = PathBuf::from(&config.out_dir);
    match &cli.command {
        Command::Fit { tech } => print_json(&fit_json(&r, tech)?),
        Command::Project { tech, year } => print_json(&project(&r, tech, *year)?),
        Command::Cross { threshold } => {
            vregrowth::scenario::DemandThreshold::registered_by_name(threshold)?;
            let rows: Vec<_> = r
                .crossings
                .iter()
                .filter(|c| &c.threshold == threshold)
                .collect();
            if rows.is_empty() {
                return Err(Error::ConfigInvalid(format!(
                    "threshold `{threshold}` is not selected in the configuration"
                )));
            }
            print_json(&rows);
        }
        Command::Mix { year } => {
            let three = vregrowth::scenario::combine(
                ["pv", "wind", "hydro"]
                    .iter()
                    .map(|t| profile(&r, t, config.wind_treatment))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let entries = vregrowth::scenario::mix_at_year(&three, *year)?;
            print_json(
                &json!({ "year": year, "wind_treatment": config.wind_treatment, "entries": entries }),
            );
        }
        Command::Learn => print_json(&r.learning),
        Command::Budget => print_json(&r.budget),
        Command::Report => {
            let mut written = vec![
                write_file(&out, "report.json", &r.to_json())?,
                write_file(
                    &out,
                    "discrepancies.csv",
                    &report::emit_discrepancies(&r.discrepancies)?,
                )?,
                write_file(&out, "crossings.csv", &report::tables::crossings_csv(&r)?)?,
                write_file(&out, "mixes.csv", &report::tables::mixes_csv(&r)?)?,
                write_file(&out, "fits.csv", &report::tables::fits_csv(&r)?)?,
            ];
            for (id, svg) in report::svg::emit_all_figures(&r)? {
                written.push(write_file(
                    &out.join("figures"),
                    &format!("{id}.svg"),
                    &svg,
                )?);
            }
            for p in written {
                println!("{}", p.display());
            }
        }
        Command::Figures { id } => match id {
            Some(id) => println!(
                "{}",
                write_file(
                    &out.join("figures"),
                    &format!("{id}.svg"),
                    &report::emit_figure(&r, id)?
                )?
                .display()
            ),
            None => {
                for (id, svg) in report::svg::emit_all_figures(&r)? {
                    println!(
                        "{}",
                        write_file(&out.join("figures"), &format!("{id}.svg"), &svg)?.display()
                    );
                }
            }
        },
    }
    Ok(())
}

/// Rebuilds the projecting profile of a technology from the report fits.
fn profile(
    r: &ScenarioReport,
    tech: &str,
    treatment: WindTreatment,
) -> Result<vregrowth::genconvert::TechnologyProfile> {
    use vregrowth::corpus::{CapacitySeries, QuantityKind, Unit};
    let f = &r.fits;
    let (model, cf): (vregrowth::growthfit::GrowthModel, f64) = match tech {
        "pv" => (f.pv.fit.clone().into(), f.pv.capacity_factor),
        "wind" => (
            f.wind_projection(treatment).clone().into(),
            f.wind.trend.capacity_factor,
        ),
        "hydro" => (f.hydro.fit.clone().into(), f.hydro.capacity_factor),
        other => return Err(Error::UnknownTechnology(other.to_string())),
    };
    let s = r
        .series(tech)
        .ok_or_else(|| Error::DatasetMissing(tech.to_string()))?;
    let series = CapacitySeries::new(
        tech,
        QuantityKind::InstalledPower,
        Unit::Gw,
        s.samples.clone(),
        s.provenance.clone(),
        false,
    )?;
    vregrowth::genconvert::TechnologyProfile::new(tech, cf, series, Some(model))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
