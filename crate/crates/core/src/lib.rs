//! Growth-curve, learning-curve and resource-budget scenario engine for
//! renewable power expansion.
//!
//! The pipeline: load yearly series ([`corpus`]), fit growth models
//! ([`growthfit`]), convert installed power to annual generation
//! ([`genconvert`]), combine technologies and solve for threshold crossings
//! ([`scenario`]), fit cost curves ([`learncurve`]), check land and resource
//! budgets ([`resourcebudget`]) and assemble everything into a report with a
//! table of stated-versus-recomputed values ([`report`]).

// `!(x > 0.0)` is the NaN-rejecting form used for input checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corpus;
pub mod error;
pub mod genconvert;
pub mod growthfit;
pub mod learncurve;
pub mod regression;
pub mod report;
pub mod resourcebudget;
pub mod scenario;

pub use error::{Error, ErrorClass, Result};
