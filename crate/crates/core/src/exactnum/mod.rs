//! Exact arithmetic: cyclotomic fields, roots of unity, real quadratic fields and d-numbers.

pub mod arith;
mod cyc;
pub(crate) mod cyclo;
mod dnumber;
mod interval;
mod quad;
mod root;

pub use cyc::CycNumber;
pub use dnumber::{
    d_numbers_q5_in_window, is_d_number, is_totally_geq, q5_scan_windows, quad_sqrt, sqrt2_obstruction_scan,
    sqrt2_obstruction_scan_detailed, ScanWindow, Sqrt2Form, Sqrt2Hit, Sqrt2Scan,
};
pub use interval::{cos_turns, pi_interval};
pub use quad::{QuadFieldElement, SUPPORTED_D};
pub use root::RootOfUnity;


use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("Galois index {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("malformed cyclotomic number: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic field Q(sqrt {0}) is not supported")]
    UnsupportedField(i64),
    #[error("not an algebraic integer: {0}")]
    NotIntegral(String),
}

/// Galois automorphism zeta ↦ zeta^k applied to `x`.
pub fn galois_apply(x: &CycNumber, k: i64) -> Result<CycNumber, ExactError> {
    x.galois(k)
}
