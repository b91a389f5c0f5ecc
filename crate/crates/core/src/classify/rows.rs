//! Table rows: constructed data grouped by family, and the published tables for comparison.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{csc_squared_dim, fpdim, fpdim_text, Certificate};
use crate::exactnum::{CycNumber, QuadFieldElement};
use crate::moddata::{equal_up_to_relabeling, ModularData};

/// A family of modular data, counted up to relabeling of simple objects.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub name: String,
    pub indexed_by: String,
    /// Distinct data among the members.
    pub classes: usize,
    pub fpdim: String,
    #[serde(skip)]
    pub fpdim_value: CycNumber,
    /// Twists other than 1, in terms of the row's parameter.
    pub twists: String,
    /// FS exponents occurring in the row.
    pub n: Vec<u64>,
    pub in_reference_table: bool,
    pub note: Option<String>,
    pub certificates: Vec<Certificate>,
    #[serde(skip)]
    pub members: Vec<ModularData>,
}

/// Keep the first of each relabeling class, in input order.
pub(crate) fn distinct_data(items: Vec<ModularData>) -> Vec<ModularData> {
    let mut out: Vec<ModularData> = Vec::new();
    for md in items {
        if !out.iter().any(|e| equal_up_to_relabeling(e, &md)) {
            out.push(md);
        }
    }
    out
}

impl ClassRow {
    pub(crate) fn new(name: &str, indexed_by: &str, twists: &str, candidates: Vec<ModularData>) -> Self {
        let members = distinct_data(candidates);
        let value = members.first().map(fpdim).unwrap_or_else(CycNumber::zero);
        let n: BTreeSet<u64> = members.iter().map(ModularData::fs_exponent).collect();
        ClassRow {
            name: name.into(),
            indexed_by: indexed_by.into(),
            classes: members.len(),
            fpdim: fpdim_text(&value),
            fpdim_value: value,
            twists: twists.into(),
            n: n.into_iter().collect(),
            in_reference_table: true,
            note: None,
            certificates: Vec::new(),
            members,
        }
    }

    pub(crate) fn unlisted(mut self) -> Self {
        self.in_reference_table = false;
        self
    }

    pub(crate) fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Every member has the same FPdim.
    pub fn fpdim_is_uniform(&self) -> bool {
        self.members.iter().all(|m| fpdim(m) == self.fpdim_value)
    }
}

/// An FPdim as printed in a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RefDim {
    Int { value: i64 },
    /// (a + b√5)/c
    Surd5 { a: i64, b: i64, c: i64 },
    /// (n/4)csc²(π/n)
    CscSquared { n: u64 },
}

impl RefDim {
    pub fn value(&self) -> CycNumber {
        match *self {
            RefDim::Int { value } => CycNumber::from_int(value),
            RefDim::Surd5 { a, b, c } => QuadFieldElement::from_ints(5, a, b, c).to_cyc(),
            RefDim::CscSquared { n } => csc_squared_dim(n),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReferenceRow {
    pub name: &'static str,
    pub classes: usize,
    pub fpdim: RefDim,
    pub n: u64,
}

const fn rr(name: &'static str, classes: usize, fpdim: RefDim, n: u64) -> ReferenceRow {
    ReferenceRow { name, classes, fpdim, n }
}

/// Published table of two-twist data with N ≠ 2.
pub const TWO_TWIST_REFERENCE: &[ReferenceRow] = &[
    rr("C(C2,q)", 2, RefDim::Int { value: 2 }, 4),
    rr("C(C3,q)", 2, RefDim::Int { value: 3 }, 3),
    rr("C(sl2,5,q)_ad", 4, RefDim::Surd5 { a: 5, b: 1, c: 2 }, 5),
];

/// Published table of three-twist data with N ≠ 3.
pub const THREE_TWIST_REFERENCE: &[ReferenceRow] = &[
    rr("C(C2,q)⊠C(C2,q̄)", 1, RefDim::Int { value: 4 }, 4),
    rr("C(C4,q)", 6, RefDim::Int { value: 4 }, 8),
    rr("I_q", 8, RefDim::Int { value: 4 }, 16),
    rr("C(C5,q)", 2, RefDim::Int { value: 5 }, 5),
    rr("C(sl2,5,q)_ad⊠C(sl2,5,q⁻¹)_ad", 2, RefDim::Surd5 { a: 15, b: 5, c: 2 }, 5),
    rr("C(sl2,7,q)_ad", 6, RefDim::CscSquared { n: 7 }, 7),
    rr("C(C4²,q)", 1, RefDim::Int { value: 16 }, 4),
    rr("Z(Vec_C2³^ω)", 1, RefDim::Int { value: 64 }, 4),
];

/// One line of a row-by-row comparison.
#[derive(Clone, Debug, Serialize)]
pub struct RowComparison {
    pub name: String,
    pub reference_classes: Option<usize>,
    pub computed_classes: Option<usize>,
    pub fpdim_matches: bool,
    pub n_matches: bool,
}

impl RowComparison {
    pub fn agrees(&self) -> bool {
        self.reference_classes.is_some()
            && self.reference_classes == self.computed_classes
            && self.fpdim_matches
            && self.n_matches
    }
}

/// Reference rows in order, then computed rows missing from the reference.
pub fn compare_rows(computed: &[ClassRow], reference: &[ReferenceRow]) -> Vec<RowComparison> {
    let mut out: Vec<RowComparison> = reference
        .iter()
        .map(|r| match computed.iter().find(|c| c.name == r.name) {
            Some(c) => RowComparison {
                name: r.name.into(),
                reference_classes: Some(r.classes),
                computed_classes: Some(c.classes),
                fpdim_matches: c.fpdim_value == r.fpdim.value(),
                n_matches: c.n.contains(&r.n),
            },
            None => RowComparison {
                name: r.name.into(),
                reference_classes: Some(r.classes),
                computed_classes: None,
                fpdim_matches: false,
                n_matches: false,
            },
        })
        .collect();
    for c in computed.iter().filter(|c| !reference.iter().any(|r| r.name == c.name)) {
        out.push(RowComparison {
            name: c.name.clone(),
            reference_classes: None,
            computed_classes: Some(c.classes),
            fpdim_matches: false,
            n_matches: false,
        });
    }
    out
}
