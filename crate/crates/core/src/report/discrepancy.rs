//! Stated literals set against their recomputation from registered inputs.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub id: String,
    pub quantity: String,
    pub stated: f64,
    /// `None` when the recomputation has no value, e.g. a threshold that is
    /// never crossed before the horizon.
    pub computed: Option<f64>,
    pub unit: String,
    /// `stated / computed - 1`
    pub relative_deviation: Option<f64>,
    /// `stated - computed`
    pub absolute_difference: Option<f64>,
    pub citation: String,
}

impl Discrepancy {
    pub fn new(
        id: &str,
        quantity: &str,
        stated: f64,
        computed: Option<f64>,
        unit: &str,
        citation: &str,
    ) -> Self {
        let computed = computed.filter(|c| c.is_finite());
        Discrepancy {
            id: id.to_string(),
            quantity: quantity.to_string(),
            stated,
            computed,
            unit: unit.to_string(),
            relative_deviation: computed.filter(|&c| c != 0.0).map(|c| stated / c - 1.0),
            absolute_difference: computed.map(|c| stated - c),
            citation: citation.to_string(),
        }
    }
}

/// Largest |relative deviation| first; rows without one go last. Ties keep
/// id order so the table is stable.
pub fn sort_discrepancies(rows: &mut [Discrepancy]) {
    rows.sort_by(|a, b| {
        let key = |d: &Discrepancy| d.relative_deviation.map(f64::abs);
        match (key(a), key(b)) {
            (Some(x), Some(y)) => y.total_cmp(&x),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        }
        .then_with(|| a.id.cmp(&b.id))
    });
}

pub const DISCREPANCY_COLUMNS: [&str; 8] = [
    "id",
    "quantity",
    "stated",
    "computed",
    "unit",
    "relative_deviation",
    "absolute_difference",
    "citation",
];

/// CSV table of the rows in the order given. An empty slice yields the
/// header line only.
pub fn emit_discrepancies(rows: &[Discrepancy]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(DISCREPANCY_COLUMNS).map_err(csv_err)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.id.clone(),
            r.quantity.clone(),
            r.stated.to_string(),
            opt(r.computed),
            r.unit.clone(),
            opt(r.relative_deviation),
            opt(r.absolute_difference),
            r.citation.clone(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviation_sign_and_order() {
        let mut rows = vec![
            Discrepancy::new("a", "", 100.0, Some(100.0), "", ""),
            Discrepancy::new("b", "", 90.0, Some(100.0), "", ""),
            Discrepancy::new("c", "", 1.0, None, "", ""),
            Discrepancy::new("d", "", 120.0, Some(100.0), "", ""),
        ];
        assert!((rows[1].relative_deviation.unwrap() + 0.1).abs() < 1e-15);
        assert_eq!(rows[0].relative_deviation, Some(0.0));
        sort_discrepancies(&mut rows);
        let ids: Vec<_> = rows.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["d", "b", "a", "c"]);
    }

    #[test]
    fn empty_table_is_header_only() {
        let text = emit_discrepancies(&[]).unwrap();
        assert_eq!(text, format!("{}\n", DISCREPANCY_COLUMNS.join(",")));
    }

    #[test]
    fn fields_with_commas_are_quoted() {
        let row = Discrepancy::new("x", "area, electric", 1.0, Some(2.0), "km2", "A, \"B\"");
        let text = emit_discrepancies(&[row]).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("x,\"area, electric\",1,2,km2,-0.5,-1,"));
    }
}
