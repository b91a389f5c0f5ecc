//! Modular data with two or three distinct twists: exact case analysis over N,
//! constructors for every surviving case, and the resulting tables.
//!
//! Conclusions carry a [`Certificate`]. `Computed` ones can be re-derived with
//! [`Certificate::recheck`] or by rerunning the enumeration they name; `Cited`
//! ones state a known theorem that is used as a filter.

mod coprime;
mod geometry;
mod rows;
mod threetwist;
mod twotwist;

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::arith::units_mod;
use crate::exactnum::{CycNumber, ExactError, QuadFieldElement, RootOfUnity};
use crate::metricgrp::MetricError;
use crate::moddata::{ModDataError, ModularData};
use crate::sl2data::Sl2Error;
use crate::twistdbl::DoubleError;

pub use coprime::{coprime_twist_check, CoprimeTag};
pub use geometry::{
    admits_vanishing_combination, cone_position, gauss_geometry_solve, half_plane_bound, ConePosition, DimFormula, GaussQuadric, GeometrySolution,
};
pub use rows::{compare_rows, ClassRow, RefDim, ReferenceRow, RowComparison, THREE_TWIST_REFERENCE, TWO_TWIST_REFERENCE};
pub use threetwist::{solve_three_twists, PerNCount, ThreeTwistCase, ThreeTwistReport, PER_N_REFERENCE};
pub use twotwist::{
    solve_two_twists, two_twist_discriminant_window, DiscriminantWindow, TwoTwistCase, TwoTwistReport, TWO_TWIST_LEVELS,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Data(#[from] ModDataError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Exact computation in this crate.
    Computed,
    /// A published theorem used as a filter.
    Cited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Empty,
    FiniteList,
    InfiniteFamily,
}

/// Data that lets a computed conclusion be checked again from scratch.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Check {
    /// Nothing to recompute here (cited, or an enumeration recorded in the claim).
    None,
    /// 2cos(2π/N) ≥ 1: the two-twist quadratic has no root D_1 ≥ 1 when D_θ > 0.
    RootsBelowOne { n: u64 },
    /// This real number is negative.
    Negative { value: CycNumber },
    /// This real number is below `bound` under the identity embedding.
    Below { value: CycNumber, bound: CycNumber },
    /// Some real embedding of this number is below `bound`.
    NotTotallyAtLeast { value: CycNumber, bound: i64 },
    /// ξ√D is not a strictly positive combination of the twists.
    ConeExcludes { twists: Vec<RootOfUnity>, xi: RootOfUnity },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub evidence: Evidence,
    pub claim: String,
    pub check: Check,
}

impl Certificate {
    pub fn computed(claim: impl Into<String>, check: Check) -> Self {
        Certificate { evidence: Evidence::Computed, claim: claim.into(), check }
    }

    pub fn cited(claim: impl Into<String>) -> Self {
        Certificate { evidence: Evidence::Cited, claim: claim.into(), check: Check::None }
    }

    /// Recompute the attached check. None when there is nothing to recompute.
    pub fn recheck(&self) -> Option<bool> {
        match &self.check {
            Check::None => None,
            Check::RootsBelowOne { n } => {
                let c = &CycNumber::zeta(*n, 1) + &CycNumber::zeta(*n, -1);
                Some(c.real_cmp_rational(&BigRational::one()) != Ordering::Less)
            }
            Check::Negative { value } => Some(value.is_real() && value.real_sign() == Ordering::Less),
            Check::Below { value, bound } => Some(value.real_cmp(bound) == Ordering::Less),
            Check::NotTotallyAtLeast { value, bound } => {
                Some(value.is_real() && !value.is_totally_geq(&BigRational::from_integer((*bound).into())))
            }
            Check::ConeExcludes { twists, xi } => Some(cone_position(twists, xi) == ConePosition::Outside),
        }
    }
}

/// Readable form of a real cyclotomic number: rational, Q(√5), Q(√2), otherwise a decimal.
pub fn real_text(x: &CycNumber) -> String {
    if let Some(q) = x.to_rational() {
        return q.to_string();
    }
    for d in [5, 2] {
        if let Some(e) = QuadFieldElement::from_cyc(x, d) {
            return e.to_string();
        }
    }
    if x.is_real() {
        let (re, _) = x.to_complex();
        return format!("≈{re:.6}");
    }
    x.to_string()
}

/// Largest real Galois conjugate of D.
pub fn fpdim(md: &ModularData) -> CycNumber {
    let d = md.global_dim();
    let n = d.conductor();
    units_mod(n)
        .into_iter()
        .map(|k| d.galois(k as i64).expect("unit"))
        .max_by(|a, b| a.real_cmp(b))
        .unwrap_or(d)
}

/// n/(4 sin²(π/n)), the global dimension of the adjoint sl_2 data at level n.
pub fn csc_squared_dim(n: u64) -> CycNumber {
    let z = CycNumber::zeta(2 * n, 1);
    let zi = CycNumber::zeta(2 * n, -1);
    // 4 sin²(π/n) = 2 − ζ_n − ζ_n⁻¹
    let four_sin2 = &CycNumber::from_int(2) - &(&(&z * &z) + &(&zi * &zi));
    CycNumber::from_int(n as i64).div_ref(&four_sin2).expect("nonzero")
}

/// Text for an FPdim: integer, quadratic surd, or (n/4)csc²(π/n).
pub fn fpdim_text(x: &CycNumber) -> String {
    if let Some(q) = x.to_rational() {
        return q.to_string();
    }
    for d in [5, 2] {
        if let Some(e) = QuadFieldElement::from_cyc(x, d) {
            return e.to_string();
        }
    }
    for n in (3..=15).step_by(2) {
        if csc_squared_dim(n) == *x {
            return format!("({n}/4)csc²(π/{n})");
        }
    }
    real_text(x)
}
