//! Metric groups: finite abelian groups with nondegenerate quadratic forms.

mod form;
mod group;

use thiserror::Error;

pub use form::{
    automorphisms, enumerate_forms, filter_by_twists, isometry_classes, metric_groups_of_order, metric_modular_data,
    QuadraticForm, TwistFilter, MAX_AUT_ORDER, MAX_ENUM_ORDER, MAX_ENUM_PARAMS,
};
pub use group::{abelian_groups_of_order, FiniteAbelianGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("invalid quadratic form: {0}")]
    Invalid(String),
    #[error("degenerate quadratic form: {0}")]
    Degenerate(String),
    #[error("group too large: {0}")]
    TooLarge(String),
}
