//! Standalone SVG charts with linear or logarithmic axes.
//!
//! Output is plain text with fixed-precision coordinates, so the same
//! report always renders to the same bytes. Elements carry `class` and
//! `data-*` attributes (`axis`, `fit`, `threshold`, `crossing`, ...) that
//! make the charts easy to inspect programmatically.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::growthfit::{ExponentialFit, Model};
use crate::regression::fit_line;
use crate::scenario::DemandThreshold;

use super::{projected_generation, ScenarioReport};

pub const FIGURE_IDS: [&str; 10] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "appfig1", "appfig6",
];

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const LINE_SAMPLES: usize = 60;

const PV: &str = "#e6a100";
const WIND: &str = "#1f77b4";
const HYDRO: &str = "#2ca02c";
const OFFSHORE: &str = "#17becf";
const TOTAL: &str = "#7f3fbf";
const BATTERY: &str = "#d62728";
const REFERENCE: &str = "#555555";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl Scale {
    fn as_str(self) -> &'static str {
        match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    }

    fn t(self, v: f64) -> f64 {
        match self {
            Scale::Linear => v,
            Scale::Log => v.log10(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Points,
    /// Fitted or projected curve.
    Fit,
    /// Extension of a fit beyond its window.
    Extension,
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub label: String,
    pub color: &'static str,
    pub kind: LayerKind,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct RefLine {
    pub value: f64,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub id: String,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub layers: Vec<Layer>,
    /// Horizontal threshold lines.
    pub thresholds: Vec<RefLine>,
    /// Vertical reference lines.
    pub verticals: Vec<RefLine>,
    pub markers: Vec<Marker>,
}

struct Axis {
    scale: Scale,
    lo: f64,
    hi: f64,
    ticks: Vec<f64>,
    decimals: usize,
}

impl Axis {
    fn fit(scale: Scale, values: impl Iterator<Item = f64>) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (scale == Scale::Linear || *v > 0.0)) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (1.0, 10.0);
        }
        match scale {
            Scale::Log => {
                let a = lo.log10().floor();
                let mut b = hi.log10().ceil();
                if b <= a {
                    b = a + 1.0;
                }
                let ticks = (a as i32..=b as i32).map(|k| 10f64.powi(k)).collect();
                Axis {
                    scale,
                    lo: 10f64.powf(a),
                    hi: 10f64.powf(b),
                    ticks,
                    decimals: 0,
                }
            }
            Scale::Linear => {
                if hi <= lo {
                    hi = lo + 1.0;
                }
                let step = nice_step((hi - lo) / 6.0);
                let a = (lo / step).floor() * step;
                let b = (hi / step).ceil() * step;
                let n = ((b - a) / step).round() as usize;
                let ticks = (0..=n).map(|i| a + i as f64 * step).collect();
                Axis {
                    scale,
                    lo: a,
                    hi: b,
                    ticks,
                    decimals: (-step.log10().floor()).max(0.0) as usize,
                }
            }
        }
    }

    /// Position in [0, 1] along the axis.
    fn frac(&self, v: f64) -> f64 {
        let (a, b) = (self.scale.t(self.lo), self.scale.t(self.hi));
        (self.scale.t(v) - a) / (b - a)
    }

    fn label(&self, v: f64) -> String {
        match self.scale {
            Scale::Log => {
                let k = v.log10().round() as i32;
                if (-3..=6).contains(&k) {
                    format!("{}", 10f64.powi(k))
                } else {
                    format!("1e{k}")
                }
            }
            Scale::Linear => format!("{:.*}", self.decimals, v),
        }
    }
}

fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let m = if f <= 1.0 {
        1.0
    } else if f <= 2.0 {
        2.0
    } else if f <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl Chart {
    fn new(
        id: &str,
        title: &str,
        x_label: &str,
        y_label: &str,
        x_scale: Scale,
        y_scale: Scale,
    ) -> Self {
        Chart {
            id: id.into(),
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x_scale,
            y_scale,
            layers: Vec::new(),
            thresholds: Vec::new(),
            verticals: Vec::new(),
            markers: Vec::new(),
        }
    }

    fn layer(
        &mut self,
        label: &str,
        color: &'static str,
        kind: LayerKind,
        points: Vec<(f64, f64)>,
    ) {
        self.layers.push(Layer {
            label: label.into(),
            color,
            kind,
            points,
        });
    }

    pub fn render(&self) -> String {
        let xs = self
            .layers
            .iter()
            .flat_map(|l| l.points.iter().map(|p| p.0))
            .chain(self.verticals.iter().map(|v| v.value))
            .chain(self.markers.iter().map(|m| m.x));
        let ys = self
            .layers
            .iter()
            .flat_map(|l| l.points.iter().map(|p| p.1))
            .chain(self.thresholds.iter().map(|v| v.value))
            .chain(self.markers.iter().map(|m| m.y));
        let xa = Axis::fit(self.x_scale, xs);
        let ya = Axis::fit(self.y_scale, ys);
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |x: f64| LEFT + xa.frac(x) * pw;
        let py = |y: f64| TOP + (1.0 - ya.frac(y)) * ph;
        let visible = |x: f64, y: f64| {
            let ok = |s: Scale, v: f64| v.is_finite() && (s == Scale::Linear || v > 0.0);
            ok(self.x_scale, x) && ok(self.y_scale, y)
        };

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-figure="{}">"#,
            esc(&self.id)
        );
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            esc(&self.title)
        );

        // axes
        let _ = writeln!(
            s,
            r#"<g class="axis x" data-scale="{}" font-family="sans-serif" font-size="11">"#,
            xa.scale.as_str()
        );
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            TOP + ph,
            LEFT + pw,
            TOP + ph
        );
        for &t in &xa.ticks {
            let x = px(t);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
                TOP + ph
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + ph + 16.0,
                xa.label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 16.0,
            esc(&self.x_label)
        );
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<g class="axis y" data-scale="{}" font-family="sans-serif" font-size="11">"#,
            ya.scale.as_str()
        );
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{:.2}" stroke="black"/>"#,
            TOP + ph
        );
        for &t in &ya.ticks {
            let y = py(t);
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
                LEFT + pw
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                ya.label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {:.2})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            esc(&self.y_label)
        );
        let _ = writeln!(s, "</g>");

        for t in &self.thresholds {
            let y = py(t.value);
            let _ = writeln!(
                s,
                r#"<g class="threshold" data-value="{}"><line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{REFERENCE}" stroke-dasharray="6 3"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" fill="{REFERENCE}">{}</text></g>"#,
                t.value,
                LEFT + pw,
                LEFT + 4.0,
                y - 3.0,
                esc(&t.label)
            );
        }
        for (i, v) in self.verticals.iter().enumerate() {
            let x = px(v.value);
            let _ = writeln!(
                s,
                r#"<g class="reference" data-value="{}"><line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="{REFERENCE}" stroke-dasharray="2 3"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end" fill="{REFERENCE}">{}</text></g>"#,
                v.value,
                TOP + ph,
                x - 3.0,
                TOP + 12.0 + 14.0 * i as f64,
                esc(&v.label)
            );
        }

        for l in &self.layers {
            let pts: Vec<(f64, f64)> = l
                .points
                .iter()
                .copied()
                .filter(|&(x, y)| visible(x, y))
                .collect();
            match l.kind {
                LayerKind::Points => {
                    let _ = writeln!(
                        s,
                        r#"<g class="points" data-label="{}" fill="{}">"#,
                        esc(&l.label),
                        l.color
                    );
                    for (x, y) in pts {
                        let _ =
                            writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, px(x), py(y));
                    }
                    let _ = writeln!(s, "</g>");
                }
                LayerKind::Fit | LayerKind::Extension => {
                    let (class, dash) = if l.kind == LayerKind::Fit {
                        ("fit", "")
                    } else {
                        ("extension", r#" stroke-dasharray="5 4""#)
                    };
                    let path: Vec<String> = pts
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polyline class="{class}" data-label="{}" fill="none" stroke="{}" stroke-width="1.8"{dash} points="{}"/>"#,
                        esc(&l.label),
                        l.color,
                        path.join(" ")
                    );
                }
            }
        }

        for m in &self.markers {
            if !visible(m.x, m.y) {
                continue;
            }
            let (x, y) = (px(m.x), py(m.y));
            let _ = writeln!(
                s,
                r#"<g class="crossing" data-x="{}" data-y="{}"><circle cx="{x:.2}" cy="{y:.2}" r="6" fill="none" stroke="black" stroke-width="1.5"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10">{}</text></g>"#,
                m.x,
                m.y,
                x + 8.0,
                y - 8.0,
                esc(&m.label)
            );
        }

        // legend
        let _ = writeln!(
            s,
            r#"<g class="legend" font-family="sans-serif" font-size="11">"#
        );
        for (i, l) in self.layers.iter().enumerate() {
            let y = TOP + 10.0 + 18.0 * i as f64;
            let x = WIDTH - RIGHT + 16.0;
            match l.kind {
                LayerKind::Points => {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{:.2}" cy="{y:.2}" r="3" fill="{}"/>"#,
                        x + 9.0,
                        l.color
                    );
                }
                _ => {
                    let dash = if l.kind == LayerKind::Extension {
                        r#" stroke-dasharray="5 4""#
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.8"{dash}/>"#,
                        x + 18.0,
                        l.color
                    );
                }
            }
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                x + 24.0,
                y + 4.0,
                esc(&l.label)
            );
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}

fn sample(a: f64, b: f64, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    (0..=LINE_SAMPLES)
        .map(|i| {
            let x = a + (b - a) * i as f64 / LINE_SAMPLES as f64;
            (x, f(x))
        })
        .collect()
}

fn log_sample(a: f64, b: f64, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let (la, lb) = (a.log10(), b.log10());
    (0..=LINE_SAMPLES)
        .map(|i| {
            let x = 10f64.powf(la + (lb - la) * i as f64 / LINE_SAMPLES as f64);
            (x, f(x))
        })
        .collect()
}

fn points(report: &ScenarioReport, name: &str, scale: f64) -> Result<Vec<(f64, f64)>> {
    let s = report.series(name).ok_or_else(|| missing(name))?;
    Ok(s.samples
        .iter()
        .map(|p| (p.year, p.value * scale))
        .collect())
}

fn missing(what: &str) -> Error {
    Error::MissingFit {
        id: what.to_string(),
        valid: FIGURE_IDS.join(", "),
    }
}

fn exp_line(fit: &ExponentialFit, a: f64, b: f64, scale: f64) -> Vec<(f64, f64)> {
    sample(a, b, |t| fit.value_at(t) * scale)
}

fn twh(cf: f64) -> f64 {
    cf * crate::genconvert::HOURS_PER_YEAR / 1000.0
}

fn demand_lines() -> Vec<RefLine> {
    [
        "electric_threshold_fig5",
        "reduced_primary_2030",
        "primary_threshold_fig5",
    ]
    .iter()
    .map(|n| {
        let t = DemandThreshold::registered_by_name(n).expect("registered threshold");
        RefLine {
            value: t.level,
            label: format!("{} TWh/yr ({})", t.level, t.stated_year),
        }
    })
    .collect()
}

/// End year of projected curves: the horizon, but no more than two decades
/// past the data so the historical part stays readable.
fn projection_end(r: &ScenarioReport) -> f64 {
    let last = r.fits.pv.fit.fit_window.1;
    r.settings.horizon.min(last + 20.0)
}

fn fig1(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig1",
        "Installed PV power",
        "year",
        "installed power [GW]",
        Scale::Linear,
        Scale::Log,
    );
    let f = &r.fits.pv.fit;
    c.layer("PV installed", PV, LayerKind::Points, points(r, "pv", 1.0)?);
    c.layer(
        &format!(
            "exponential fit, doubling {:.2} yr",
            r.fits.pv.doubling_time_years
        ),
        PV,
        LayerKind::Fit,
        exp_line(f, f.fit_window.0, f.fit_window.1, 1.0),
    );
    Ok(c)
}

fn fig2(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig2",
        "Installed wind power",
        "year",
        "installed power [GW]",
        Scale::Linear,
        Scale::Log,
    );
    let w = &r.fits.wind;
    let last = w.trend.fit.fit_window.1;
    c.layer(
        "wind installed",
        WIND,
        LayerKind::Points,
        points(r, "wind", 1.0)?,
    );
    let rb = &w.rebound.fit;
    c.layer(
        "pre-break exponential",
        BATTERY,
        LayerKind::Fit,
        exp_line(rb, rb.fit_window.0, rb.fit_window.1, 1.0),
    );
    c.layer(
        "pre-break, continued",
        BATTERY,
        LayerKind::Extension,
        exp_line(rb, rb.fit_window.1, last, 1.0),
    );
    let pw = &w.piecewise.fit;
    c.layer(
        "post-break segment",
        TOTAL,
        LayerKind::Fit,
        exp_line(&pw.right, pw.right.fit_window.0, pw.right.fit_window.1, 1.0),
    );
    c.layer(
        "full-record trend",
        REFERENCE,
        LayerKind::Extension,
        exp_line(&w.trend.fit, w.trend.fit.fit_window.0, last, 1.0),
    );
    c.verticals.push(RefLine {
        value: pw.changepoint_year,
        label: format!("break after {}", pw.changepoint_year),
    });
    Ok(c)
}

fn fig3(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig3",
        "Installed offshore wind power",
        "year",
        "installed power [GW]",
        Scale::Linear,
        Scale::Log,
    );
    let o = &r.fits.offshore_wind;
    let f = &o.exponential.fit;
    c.layer(
        "offshore installed",
        OFFSHORE,
        LayerKind::Points,
        points(r, "offshore_wind", 1.0)?,
    );
    c.layer(
        "exponential fit",
        OFFSHORE,
        LayerKind::Fit,
        exp_line(f, f.fit_window.0, f.fit_window.1, 1.0),
    );
    if o.year_of_1_tw.is_finite() && o.year_of_1_tw > f.fit_window.1 {
        c.layer(
            "extrapolation",
            OFFSHORE,
            LayerKind::Extension,
            exp_line(f, f.fit_window.1, o.year_of_1_tw, 1.0),
        );
        c.markers.push(Marker {
            x: o.year_of_1_tw,
            y: 1000.0,
            label: format!("1 TW in {:.1}", o.year_of_1_tw),
        });
    }
    c.thresholds.push(RefLine {
        value: 1000.0,
        label: "1 TW".into(),
    });
    Ok(c)
}

fn fig4(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig4",
        "Generation capability of installed wind and PV",
        "year",
        "generation [TWh/yr]",
        Scale::Linear,
        Scale::Linear,
    );
    c.layer(
        "wind",
        WIND,
        LayerKind::Points,
        points(r, "wind", twh(r.fits.wind.trend.capacity_factor))?,
    );
    c.layer(
        "PV",
        PV,
        LayerKind::Points,
        points(r, "pv", twh(r.fits.pv.capacity_factor))?,
    );
    Ok(c)
}

fn fig5(r: &ScenarioReport) -> Result<Chart> {
    let t = r.settings.headline_wind_treatment;
    let mut c = Chart::new(
        "fig5",
        &format!(
            "Generation capability and projections (wind: {})",
            t.as_str()
        ),
        "year",
        "generation [TWh/yr]",
        Scale::Linear,
        Scale::Log,
    );
    let end = projection_end(r);
    let f = &r.fits;
    c.layer(
        "PV",
        PV,
        LayerKind::Points,
        points(r, "pv", twh(f.pv.capacity_factor))?,
    );
    c.layer(
        "wind",
        WIND,
        LayerKind::Points,
        points(r, "wind", twh(f.wind.trend.capacity_factor))?,
    );
    c.layer(
        "hydro",
        HYDRO,
        LayerKind::Points,
        points(r, "hydro", twh(f.hydro.capacity_factor))?,
    );
    c.layer(
        "PV projection",
        PV,
        LayerKind::Fit,
        exp_line(
            &f.pv.fit,
            f.pv.fit.fit_window.0,
            end,
            twh(f.pv.capacity_factor),
        ),
    );
    let w = f.wind_projection(t);
    c.layer(
        "wind projection",
        WIND,
        LayerKind::Fit,
        exp_line(w, w.fit_window.0, end, twh(f.wind.trend.capacity_factor)),
    );
    let h = &f.hydro;
    c.layer(
        "hydro projection",
        HYDRO,
        LayerKind::Fit,
        sample(h.fit.fit_window.0, end, |y| {
            projected_generation(&h.fit, h.capacity_factor, y)
        }),
    );
    c.thresholds = demand_lines();
    if let Some(y) = r.crossover(t) {
        c.markers.push(Marker {
            x: y,
            y: projected_generation(&f.pv.fit, f.pv.capacity_factor, y),
            label: format!("PV passes wind {y:.1}"),
        });
    }
    Ok(c)
}

fn fig6(r: &ScenarioReport) -> Result<Chart> {
    let t = r.settings.headline_wind_treatment;
    let mut c = Chart::new(
        "fig6",
        &format!("Wind and PV combined (wind: {})", t.as_str()),
        "year",
        "generation [TWh/yr]",
        Scale::Linear,
        Scale::Log,
    );
    let f = &r.fits;
    let (cf_pv, cf_wind) = (f.pv.capacity_factor, f.wind.trend.capacity_factor);
    let pv = r.series("pv").ok_or_else(|| missing("pv"))?;
    let wind = r.series("wind").ok_or_else(|| missing("wind"))?;
    let combined: Vec<(f64, f64)> = pv
        .samples
        .iter()
        .filter_map(|p| {
            wind.samples
                .iter()
                .find(|w| w.year == p.year)
                .map(|w| (p.year, p.value * twh(cf_pv) + w.value * twh(cf_wind)))
        })
        .collect();
    let w = f.wind_projection(t);
    let start = f.pv.fit.fit_window.0.max(w.fit_window.0);
    c.layer("wind + PV", TOTAL, LayerKind::Points, combined);
    c.layer(
        "combined projection",
        TOTAL,
        LayerKind::Fit,
        sample(start, projection_end(r), |y| {
            projected_generation(&f.pv.fit, cf_pv, y) + projected_generation(w, cf_wind, y)
        }),
    );
    c.thresholds = demand_lines();
    for th in ["electric_threshold_fig5", "primary_threshold_fig5"] {
        if let Some(rec) = r.crossing("pv+wind", Some(t), th) {
            if let Some(y) = rec.crossing.year() {
                c.markers.push(Marker {
                    x: y,
                    y: rec.level_twh_per_year,
                    label: format!("{y:.2}"),
                });
            }
        }
    }
    Ok(c)
}

fn fig7(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig7",
        "LCOE of utility PV and onshore wind",
        "year",
        "LCOE [USD/MWh]",
        Scale::Linear,
        Scale::Log,
    );
    let l = &r.learning;
    for (name, color, decay) in [
        ("lcoe_pv", PV, &l.pv_decay),
        ("lcoe_wind", WIND, &l.wind_decay),
    ] {
        c.layer(name, color, LayerKind::Points, points(r, name, 1.0)?);
        c.layer(
            &format!("{:.3} per year", decay.annual_factor),
            color,
            LayerKind::Extension,
            sample(decay.fit_window.0, decay.fit_window.1, |y| decay.cost(y)),
        );
    }
    Ok(c)
}

fn fig8(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "fig8",
        "LCOE against generation capability",
        "generation capability [TWh/yr]",
        "LCOE [USD/MWh]",
        Scale::Log,
        Scale::Log,
    );
    let l = &r.learning;
    let lines = demand_lines();
    let far = lines.iter().map(|t| t.value).fold(0.0, f64::max);
    let end = l.curve_crossing.map_or(far, |x| x.x.max(far)) * 2.0;
    for (label, color, curve) in [("PV", PV, &l.pv_curve), ("wind", WIND, &l.wind_curve)] {
        c.layer(
            label,
            color,
            LayerKind::Points,
            curve.points.iter().map(|p| (p.year, p.value)).collect(),
        );
        c.layer(
            &format!("{label} learning rate {:.1}%", 100.0 * curve.learning_rate),
            color,
            LayerKind::Fit,
            log_sample(curve.fit.x_range.0, end, |x| curve.fit.cost(x)),
        );
    }
    c.verticals = vec![lines[0].clone(), lines[2].clone()];
    if let Some(x) = l.curve_crossing {
        c.markers.push(Marker {
            x: x.x,
            y: x.cost,
            label: format!("{:.0} TWh/yr, {:.2} USD/MWh", x.x, x.cost),
        });
    }
    Ok(c)
}

fn appfig1(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "appfig1",
        "Offshore wind potential against available sea area",
        "sea area [million km2]",
        "potential [TWh/yr]",
        Scale::Linear,
        Scale::Linear,
    );
    let o = &r.budget.offshore_extrapolation;
    let known: Vec<(f64, f64)> = o
        .table
        .iter()
        .filter_map(|row| row.potential_twh_per_year.map(|p| (row.area_mkm2, p)))
        .collect();
    let target = o
        .table
        .iter()
        .find(|row| row.potential_twh_per_year.is_none())
        .ok_or_else(|| missing("offshore area target"))?;
    let xs: Vec<f64> = known.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = known.iter().map(|p| p.1).collect();
    let line = fit_line(&xs, &ys)?;
    c.layer(
        "depth-limited potential",
        OFFSHORE,
        LayerKind::Points,
        known,
    );
    c.layer(
        "least squares",
        OFFSHORE,
        LayerKind::Fit,
        sample(0.0, target.area_mkm2, |a| line.predict(a)),
    );
    c.markers.push(Marker {
        x: target.area_mkm2,
        y: o.potential_twh_per_year,
        label: format!(
            "{} m: {:.0} TWh/yr",
            o.target_depth_m, o.potential_twh_per_year
        ),
    });
    Ok(c)
}

fn appfig6(r: &ScenarioReport) -> Result<Chart> {
    let mut c = Chart::new(
        "appfig6",
        "Lithium-ion battery pack cost",
        "year",
        "cost [USD/kWh]",
        Scale::Linear,
        Scale::Log,
    );
    let l = &r.learning;
    let d = &l.battery_decay;
    c.layer(
        "pack price",
        BATTERY,
        LayerKind::Points,
        points(r, "battery", 1.0)?,
    );
    c.layer(
        "exponential decay",
        BATTERY,
        LayerKind::Fit,
        sample(d.fit_window.0, d.fit_window.1, |y| d.cost(y)),
    );
    c.layer(
        "extrapolation",
        BATTERY,
        LayerKind::Extension,
        sample(d.fit_window.1, l.battery_target_year, |y| d.cost(y)),
    );
    c.markers.push(Marker {
        x: l.battery_target_year,
        y: l.battery_cost_at_target_usd_per_kwh,
        label: format!("{:.1} USD/kWh", l.battery_cost_at_target_usd_per_kwh),
    });
    Ok(c)
}

/// Chart description of a figure, before rendering.
pub fn build_chart(report: &ScenarioReport, id: &str) -> Result<Chart> {
    match id {
        "fig1" => fig1(report),
        "fig2" => fig2(report),
        "fig3" => fig3(report),
        "fig4" => fig4(report),
        "fig5" => fig5(report),
        "fig6" => fig6(report),
        "fig7" => fig7(report),
        "fig8" => fig8(report),
        "appfig1" => appfig1(report),
        "appfig6" => appfig6(report),
        other => Err(missing(other)),
    }
}

pub fn emit_figure(report: &ScenarioReport, id: &str) -> Result<String> {
    Ok(build_chart(report, id)?.render())
}

/// Renders every figure, one thread per figure. The result is in
/// [`FIGURE_IDS`] order and identical to rendering them one by one.
pub fn emit_all_figures(report: &ScenarioReport) -> Result<Vec<(&'static str, String)>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = FIGURE_IDS
            .iter()
            .map(|&id| scope.spawn(move || emit_figure(report, id).map(|svg| (id, svg))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure rendering does not panic"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_axis_spans_decades() {
        let a = Axis::fit(Scale::Log, [3.0, 4500.0].into_iter());
        assert_eq!((a.lo, a.hi), (1.0, 10_000.0));
        assert_eq!(a.ticks.len(), 5);
        assert!((a.frac(100.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn linear_axis_uses_round_steps() {
        let a = Axis::fit(Scale::Linear, [1996.0, 2020.0].into_iter());
        assert_eq!(a.lo, 1995.0);
        assert_eq!(a.hi, 2020.0);
        assert_eq!(a.label(2000.0), "2000");
        assert_eq!(nice_step(0.37), 0.5);
    }

    #[test]
    fn labels_are_escaped() {
        let mut c = Chart::new("x", "a < b & c", "x", "y", Scale::Linear, Scale::Linear);
        c.layer("\"q\"", PV, LayerKind::Points, vec![(1.0, 1.0)]);
        let svg = c.render();
        assert!(svg.contains("a &lt; b &amp; c"));
        assert!(svg.contains("&quot;q&quot;"));
    }
}
