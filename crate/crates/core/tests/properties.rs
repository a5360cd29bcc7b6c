use proptest::prelude::*;

use vregrowth::corpus::{CapacitySeries, QuantityKind, Sample, Unit};
use vregrowth::genconvert::TechnologyProfile;
use vregrowth::growthfit::{fit_exponential, ExponentialFit, Model, YearWindow};
use vregrowth::learncurve::{
    curve_crossing, fit_learning_curve, fit_time_decay, CostSeries, XKind,
};
use vregrowth::resourcebudget::{potential_fraction, pv_area_required, ResourcePotential};
use vregrowth::scenario::{combine, crossing_year, CombinedProjection, DemandThreshold};

fn series(samples: Vec<Sample>) -> CapacitySeries {
    CapacitySeries::new(
        "s",
        QuantityKind::InstalledPower,
        Unit::Gw,
        samples,
        "",
        true,
    )
    .unwrap()
}

fn noisy(t0: f64, values: &[f64]) -> Vec<Sample> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| Sample::new(t0 + i as f64, v))
        .collect()
}

fn profile(name: &str, p0: f64, b: f64, cf: f64) -> TechnologyProfile {
    let fit = ExponentialFit::from_parameters(2000.0, p0, b, 2010.0);
    TechnologyProfile::new(
        name,
        cf,
        series(vec![Sample::new(2000.0, p0)]),
        Some(fit.into()),
    )
    .unwrap()
}

fn year(p: &CombinedProjection, level: f64) -> Option<f64> {
    let t = DemandThreshold::new("t", level, 0.0, "").unwrap();
    crossing_year(p, &t, 2080.0).unwrap().crossing.year()
}

fn costs(kind: XKind, points: &[(f64, f64)]) -> CostSeries {
    CostSeries::new(
        "c",
        kind,
        Unit::UsdPerMwh,
        points.iter().map(|&(x, c)| Sample::new(x, c)).collect(),
    )
    .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn fit_is_scale_equivariant(values in prop::collection::vec(0.1f64..1e4, 3..25), c in 1e-3f64..1e3) {
        let base = fit_exponential(&series(noisy(2000.0, &values)), YearWindow::FULL).unwrap();
        let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
        let s = fit_exponential(&series(noisy(2000.0, &scaled)), YearWindow::FULL).unwrap();
        prop_assert!((s.ln_slope - base.ln_slope).abs() <= 1e-9 * base.ln_slope.abs().max(1.0));
        prop_assert!((s.ln_intercept - base.ln_intercept - c.ln()).abs() <= 1e-9);
    }

    #[test]
    fn fit_is_time_shift_equivariant(values in prop::collection::vec(0.1f64..1e4, 3..25), shift in -50.0f64..50.0) {
        let base = fit_exponential(&series(noisy(2000.0, &values)), YearWindow::FULL).unwrap();
        let moved = fit_exponential(&series(noisy(2000.0 + shift, &values)), YearWindow::FULL).unwrap();
        prop_assert!((moved.ln_slope - base.ln_slope).abs() <= 1e-9 * base.ln_slope.abs().max(1.0));
        prop_assert_eq!(moved.reference_year, base.reference_year + shift);
    }

    #[test]
    fn fits_are_deterministic(values in prop::collection::vec(0.1f64..1e4, 3..25)) {
        let s = series(noisy(1990.0, &values));
        prop_assert_eq!(fit_exponential(&s, YearWindow::FULL).unwrap(), fit_exponential(&s, YearWindow::FULL).unwrap());
    }

    #[test]
    fn combination_is_additive(
        a in (0.1f64..100.0, 0.0f64..0.5, 0.05f64..0.9),
        b in (0.1f64..100.0, 0.0f64..0.5, 0.05f64..0.9),
        t in 2000.0f64..2060.0,
    ) {
        let (pa, pb) = (profile("a", a.0, a.1, a.2), profile("b", b.0, b.1, b.2));
        let both = combine(vec![pa.clone(), pb.clone()]).unwrap().evaluate(t).unwrap();
        let sum = pa.projected_generation(t).unwrap() + pb.projected_generation(t).unwrap();
        prop_assert!(rel(both, sum) <= 1e-12);
    }

    #[test]
    fn crossings_are_monotone_in_level_and_components(
        a in (1.0f64..100.0, 0.05f64..0.5, 0.05f64..0.9),
        b in (1.0f64..100.0, 0.05f64..0.5, 0.05f64..0.9),
        l1 in 1e3f64..1e5,
        l2 in 1e3f64..1e5,
    ) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let one = combine(vec![profile("a", a.0, a.1, a.2)]).unwrap();
        let two = combine(vec![profile("a", a.0, a.1, a.2), profile("b", b.0, b.1, b.2)]).unwrap();
        prop_assume!(one.evaluate(2000.0).unwrap() < lo);
        let (y_lo, y_hi) = (year(&one, lo), year(&one, hi));
        if let (Some(x), Some(y)) = (y_lo, y_hi) {
            prop_assert!(x <= y);
        }
        if let Some(y1) = y_lo {
            match year(&two, lo) {
                Some(y2) => prop_assert!(y2 <= y1 + 1e-6),
                None => prop_assert!(two.evaluate(2000.0).unwrap() >= lo, "two components never reach {lo}"),
            }
        }
    }

    #[test]
    fn learning_curve_rescaling_shifts_intercept(
        points in prop::collection::vec((1.0f64..1e5, 1.0f64..500.0), 3..12),
        k in 1e-3f64..1e3,
    ) {
        let mut points = points;
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        prop_assume!(points.len() >= 3);
        let base = fit_learning_curve(&costs(XKind::CumulativeGeneration, &points)).unwrap();
        let scaled: Vec<(f64, f64)> = points.iter().map(|&(x, c)| (x * k, c)).collect();
        let s = fit_learning_curve(&costs(XKind::CumulativeGeneration, &scaled)).unwrap();
        prop_assert!((s.log10_slope - base.log10_slope).abs() <= 1e-12);
        prop_assert!((s.log10_intercept - (base.log10_intercept - base.log10_slope * k.log10())).abs() <= 1e-9);
    }

    #[test]
    fn curve_crossing_equalises_costs(
        a in (0.5f64..4.0, -1.0f64..-0.01),
        b in (0.5f64..4.0, -1.0f64..-0.01),
    ) {
        prop_assume!((a.1 - b.1).abs() > 1e-3);
        let line = |(i, s): (f64, f64)| {
            let pts: Vec<(f64, f64)> = [1.0, 10.0, 100.0].iter().map(|&x: &f64| (x, 10f64.powf(i + s * x.log10()))).collect();
            fit_learning_curve(&costs(XKind::CumulativeGeneration, &pts)).unwrap()
        };
        let (fa, fb) = (line(a), line(b));
        let c = match curve_crossing(&fa, &fb) {
            Ok(c) => c,
            Err(_) => {
                let log_x = (fb.log10_intercept - fa.log10_intercept) / (fa.log10_slope - fb.log10_slope);
                prop_assert!(!10f64.powf(log_x).is_normal() || !fa.cost(10f64.powf(log_x)).is_normal());
                return Ok(());
            }
        };
        prop_assert!(rel(fa.cost(c.x), fb.cost(c.x)) <= 1e-9);
        prop_assert!(rel(c.cost, fa.cost(c.x)) <= 1e-9);

        // steeper and dearer at the smallest x: the crossing lies beyond it
        let x0 = 1.0;
        let (steep, flat) = if fa.log10_slope < fb.log10_slope { (&fa, &fb) } else { (&fb, &fa) };
        if steep.cost(x0) > flat.cost(x0) {
            prop_assert!(c.x > x0);
        }
    }

    #[test]
    fn time_decay_recovers_geometric_rate(c0 in 1.0f64..1e4, r in 0.3f64..0.99, n in 3usize..20) {
        let pts: Vec<(f64, f64)> = (0..n).map(|i| (2005.0 + i as f64, c0 * r.powi(i as i32))).collect();
        let fit = fit_time_decay(&costs(XKind::Year, &pts)).unwrap();
        prop_assert!(rel(fit.annual_factor, r) <= 1e-9);
    }

    #[test]
    fn potential_fraction_is_reciprocal(demand in 1.0f64..1e6, potential in 1.0f64..1e6) {
        let p = ResourcePotential::new("p", potential, "", "").unwrap();
        let s = potential_fraction(demand, &p).unwrap();
        prop_assert!((s.fraction * s.times_over - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn area_scales_with_inputs(demand in 1.0f64..1e6, density in 1.0f64..100.0, cf in 0.01f64..0.5, k in 0.1f64..2.0) {
        let a = pv_area_required(demand, density, cf).unwrap();
        prop_assert!(rel(pv_area_required(k * demand, density, cf).unwrap(), k * a) <= 1e-12);
        prop_assert!(rel(pv_area_required(demand, k * density, cf).unwrap(), a / k) <= 1e-12);
        prop_assert!(rel(pv_area_required(demand, density, k * cf).unwrap(), a / k) <= 1e-12);
    }
}

#[test]
fn models_evaluate_at_window_end() {
    let s = series(noisy(2000.0, &[1.0, 2.1, 3.9, 8.2, 15.8]));
    let fit = fit_exponential(&s, YearWindow::FULL).unwrap();
    let end = fit.window().1;
    assert_eq!(
        fit.value_at(end),
        (fit.ln_intercept + fit.ln_slope * (end - fit.reference_year)).exp()
    );
}
