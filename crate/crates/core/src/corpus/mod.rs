//! Bundled datasets, the constants registry and series ingestion.

pub mod constants;
pub mod datasets;
pub mod series;

pub use constants::{get_constant, reduced_primary, Constant, ConstantsRegistry};
pub use datasets::{bundled, bundled_names};
pub use series::{load_capacity_series, CapacitySeries, QuantityKind, Sample, SeriesSchema, Unit};
