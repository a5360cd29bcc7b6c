use roxmltree::{Document, Node};

use vregrowth::report::{emit_figure, run_scenario, ScenarioConfig, ScenarioReport, FIGURE_IDS};
use vregrowth::ErrorClass;

fn report() -> ScenarioReport {
    run_scenario(&ScenarioConfig::default()).unwrap()
}

fn has_class(n: &Node, class: &str) -> bool {
    n.attribute("class")
        .is_some_and(|c| c.split(' ').any(|p| p == class))
}

fn with_class<'a>(doc: &'a Document, class: &str) -> Vec<Node<'a, 'a>> {
    doc.descendants().filter(|n| has_class(n, class)).collect()
}

fn axis_scale(doc: &Document, which: &str) -> String {
    let axes: Vec<_> = with_class(doc, "axis")
        .into_iter()
        .filter(|n| has_class(n, which))
        .collect();
    assert_eq!(axes.len(), 1, "one {which} axis");
    axes[0].attribute("data-scale").unwrap().to_string()
}

#[test]
fn every_figure_is_well_formed() {
    let r = report();
    for id in FIGURE_IDS {
        let svg = emit_figure(&r, id).unwrap();
        let doc = Document::parse(&svg).unwrap_or_else(|e| panic!("{id}: {e}"));
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("data-figure"), Some(id));
        assert_eq!(with_class(&doc, "legend").len(), 1, "{id}");
    }
}

#[test]
fn fig5_has_log_ordinate_and_three_thresholds() {
    let svg = emit_figure(&report(), "fig5").unwrap();
    let doc = Document::parse(&svg).unwrap();
    assert_eq!(axis_scale(&doc, "y"), "log");
    let mut levels: Vec<f64> = with_class(&doc, "threshold")
        .iter()
        .map(|n| n.attribute("data-value").unwrap().parse().unwrap())
        .collect();
    levels.sort_by(f64::total_cmp);
    assert_eq!(levels, vec![33_000.0, 106_950.0, 198_000.0]);
}

#[test]
fn fig8_is_log_log_with_two_fits_and_a_crossing() {
    let r = report();
    let svg = emit_figure(&r, "fig8").unwrap();
    let doc = Document::parse(&svg).unwrap();
    assert_eq!(axis_scale(&doc, "x"), "log");
    assert_eq!(axis_scale(&doc, "y"), "log");
    assert_eq!(with_class(&doc, "fit").len(), 2);

    let marks = with_class(&doc, "crossing");
    assert_eq!(marks.len(), 1);
    let x: f64 = marks[0].attribute("data-x").unwrap().parse().unwrap();
    let c = r.learning.curve_crossing.unwrap();
    assert_eq!(x, c.x);
}

#[test]
fn plotted_points_lie_inside_the_plot_area() {
    let r = report();
    for id in FIGURE_IDS {
        let svg = emit_figure(&r, id).unwrap();
        let doc = Document::parse(&svg).unwrap();
        let root = doc.root_element();
        let w: f64 = root.attribute("width").unwrap().parse().unwrap();
        let h: f64 = root.attribute("height").unwrap().parse().unwrap();
        for g in with_class(&doc, "points") {
            for c in g.children().filter(|n| n.has_tag_name("circle")) {
                let cx: f64 = c.attribute("cx").unwrap().parse().unwrap();
                let cy: f64 = c.attribute("cy").unwrap().parse().unwrap();
                assert!(
                    (0.0..=w).contains(&cx) && (0.0..=h).contains(&cy),
                    "{id}: ({cx}, {cy})"
                );
            }
        }
    }
}

#[test]
fn unknown_figure_names_valid_ids() {
    let err = emit_figure(&report(), "fig9").unwrap_err();
    assert_eq!(err.class(), ErrorClass::Config);
    let msg = err.to_string();
    for id in FIGURE_IDS {
        assert!(msg.contains(id), "{msg}");
    }
}
