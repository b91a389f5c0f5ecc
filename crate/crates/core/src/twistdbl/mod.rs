//! Twisted Drinfeld doubles Z(Vec_G^ω) of finite abelian groups.

mod cocycle;
mod double;

use thiserror::Error;

use crate::moddata::ModDataError;

pub use cocycle::{
    cocycle_by_index, cocycle_params, enumerate_cocycle_classes, h3_order, CocycleParam, ThreeCocycle,
    MAX_COCYCLE_ORDER, MAX_TABLE_ORDER,
};
pub use double::{
    build_double, classify_doubles_by_twistcount, double_modular_data, double_simples, is_two_cocycle, radical, slant, twisted_double,
    DoubleScanRow, DoubleSimple, TraceCheck, TraceReport, TwistedDouble, TwoCochain,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DoubleError {
    #[error("invalid cocycle: {0}")]
    Invalid(String),
    #[error("group too large: {0}")]
    TooLarge(String),
    #[error("construction convention failure: {0}")]
    Convention(String),
    #[error(transparent)]
    Data(#[from] ModDataError),
}
