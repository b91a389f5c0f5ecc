//! Exact modular data workbench.
//!
//! Builds, validates and classifies modular data (S and T matrices) with few
//! distinct twists, using exact cyclotomic arithmetic throughout.

pub mod classify;
pub mod exactnum;
pub mod metricgrp;
pub mod moddata;
pub mod sl2data;
pub mod twistdbl;

pub use exactnum::{CycNumber, ExactError, QuadFieldElement, RootOfUnity};
pub use metricgrp::{FiniteAbelianGroup, QuadraticForm};
pub use moddata::{validate, ModDataError, ModularData, ValidationReport};
