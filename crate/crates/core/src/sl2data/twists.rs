//! Twist sets obtained from a t-spectrum by choosing which eigenvalue belongs to the unit.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{parse_product, Sl2Error};
use crate::exactnum::RootOfUnity;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwistCandidate {
    pub t_spectrum: BTreeSet<RootOfUnity>,
    pub gamma: RootOfUnity,
    pub xi: RootOfUnity,
    pub twists: BTreeSet<RootOfUnity>,
}

/// One candidate per choice of t_1: γ = t_1⁻¹, ξ = γ³, twists = γ·spectrum.
pub fn twist_candidates(spectrum: &BTreeSet<RootOfUnity>) -> Result<Vec<TwistCandidate>, Sl2Error> {
    if spectrum.is_empty() || spectrum.len() > 3 {
        return Err(Sl2Error::Unsupported(format!("spectrum of size {}", spectrum.len())));
    }
    Ok(spectrum
        .iter()
        .map(|t1| {
            let gamma = t1.inv();
            TwistCandidate {
                t_spectrum: spectrum.clone(),
                gamma,
                xi: gamma.pow(3),
                twists: spectrum.iter().map(|t| t.mul(&gamma)).collect(),
            }
        })
        .collect())
}

/// A printed row: spectrum, γ, ξ (absent when the table has no ξ column) and twists.
#[derive(Clone, Copy, Debug)]
pub struct TwistTableRow {
    pub spectrum: &'static str,
    pub gamma: &'static str,
    pub xi: Option<&'static str>,
    pub twists: &'static str,
}

impl TwistTableRow {
    pub fn spectrum_set(&self) -> BTreeSet<RootOfUnity> {
        parse_set(self.spectrum)
    }

    pub fn gamma_root(&self) -> RootOfUnity {
        parse_product(self.gamma).expect("table token")
    }

    pub fn xi_root(&self) -> Option<RootOfUnity> {
        self.xi.map(|x| parse_product(x).expect("table token"))
    }

    pub fn twist_set(&self) -> BTreeSet<RootOfUnity> {
        parse_set(self.twists)
    }

    /// The candidate with this row's γ, computed from the row's spectrum.
    pub fn regenerate(&self) -> Option<TwistCandidate> {
        let gamma = self.gamma_root();
        twist_candidates(&self.spectrum_set()).ok()?.into_iter().find(|c| c.gamma == gamma)
    }

    /// Cells of the printed row that differ from the regenerated candidate.
    pub fn mismatches(&self) -> Vec<&'static str> {
        let Some(c) = self.regenerate() else {
            return vec!["gamma"];
        };
        let mut out = Vec::new();
        if self.xi_root().is_some_and(|x| x != c.xi) {
            out.push("xi");
        }
        if self.twist_set() != c.twists {
            out.push("twists");
        }
        out
    }
}

fn parse_set(s: &str) -> BTreeSet<RootOfUnity> {
    s.split(',').map(|t| parse_product(t.trim()).expect("table token")).collect()
}

const fn row(spectrum: &'static str, gamma: &'static str, xi: &'static str, twists: &'static str) -> TwistTableRow {
    TwistTableRow { spectrum, gamma, xi: Some(xi), twists }
}

const fn row12(spectrum: &'static str, gamma: &'static str, twists: &'static str) -> TwistTableRow {
    TwistTableRow { spectrum, gamma, xi: None, twists }
}

/// Level-8 factor with three t-eigenvalues, times a third root of unity w.
pub const LEVEL8_THREE_EIGENVALUES: &[TwistTableRow] = &[
    row("w,w*z8,w*z8^5", "wi", "1", "1,z8,z8^5"),
    row("w,w*z8,w*z8^5", "wi*z8^7", "z8^5", "1,-1,z8^7"),
    row("w,w*z8,w*z8^5", "wi*z8^3", "z8", "1,-1,z8^3"),
    row("-w,w*z8,w*z8^5", "-wi", "-1", "1,z8,z8^5"),
    row("-w,w*z8,w*z8^5", "wi*z8^7", "z8^5", "1,-1,z8"),
    row("-w,w*z8,w*z8^5", "wi*z8^3", "z8", "1,-1,z8^5"),
    row("w*z4,w*z8,w*z8^5", "wi*z4^3", "z4", "1,z8^3,z8^7"),
    row("w*z4,w*z8,w*z8^5", "wi*z8^7", "z8^5", "1,-1,z8"),
    row("w*z4,w*z8,w*z8^5", "wi*z8^3", "z8", "1,-1,z8^5"),
    row("w*z4^3,w*z8,w*z8^5", "wi*z4", "z4^3", "1,z8^3,z8^7"),
    row("w*z4^3,w*z8,w*z8^5", "wi*z8^7", "z8^5", "1,-1,z8^5"),
    row("w*z4^3,w*z8,w*z8^5", "wi*z8^3", "z8", "1,-1,z8"),
    row("w,w*z8^3,w*z8^7", "wi", "1", "1,z8^3,z8^7"),
    row("w,w*z8^3,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z8^5"),
    row("w,w*z8^3,w*z8^7", "wi*z8", "z8^3", "1,-1,z8"),
    row("-w,w*z8^3,w*z8^7", "-wi", "-1", "1,z8^3,z8^7"),
    row("-w,w*z8^3,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z8"),
    row("-w,w*z8^3,w*z8^7", "wi*z8", "z8^3", "1,-1,z8^5"),
    row("w*z4,w*z8^3,w*z8^7", "wi*z4^3", "z4", "1,z8,z8^5"),
    row("w*z4,w*z8^3,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z8^7"),
    row("w*z4,w*z8^3,w*z8^7", "wi*z8", "z8^3", "1,-1,z8^3"),
    row("w*z4^3,w*z8^3,w*z8^7", "wi*z4", "z4^3", "1,z8,z8^5"),
    row("w*z4^3,w*z8^3,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z8^3"),
    row("w*z4^3,w*z8^3,w*z8^7", "wi*z8", "z8^3", "1,-1,z8^7"),
];

/// Level-8 factor with two t-eigenvalues, times a primitive third root of unity w.
pub const LEVEL8_TWO_EIGENVALUES: &[TwistTableRow] = &[
    row("w*z8,w*z8^3,w*z8^5", "wi*z8^7", "z8^5", "1,-1,z4"),
    row("w*z8,w*z8^3,w*z8^5", "wi*z8^5", "z8^7", "1,z4,z4^3"),
    row("w*z8,w*z8^3,w*z8^5", "wi*z8^3", "z8", "1,-1,z4^3"),
    row("w*z8,w*z8^3,w*z8^7", "wi*z8^7", "z8^5", "1,z4,z4^3"),
    row("w*z8,w*z8^3,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z4^3"),
    row("w*z8,w*z8^3,w*z8^7", "wi*z8", "z8^3", "1,-1,z4"),
    row("w*z8,w*z8^5,w*z8^7", "wi*z8^7", "z8^5", "1,-1,z4^3"),
    row("w*z8,w*z8^5,w*z8^7", "wi*z8^3", "z8", "1,-1,z4"),
    row("w*z8,w*z8^5,w*z8^7", "wi*z8", "z8^3", "1,z4,z4^3"),
    row("w*z8^3,w*z8^5,w*z8^7", "wi*z8^5", "z8^7", "1,-1,z4"),
    row("w*z8^3,w*z8^5,w*z8^7", "wi*z8^3", "z8", "1,z4,z4^3"),
    row("w*z8^3,w*z8^5,w*z8^7", "wi*z8", "z8^3", "1,-1,z4^3"),
];

/// Spectra containing ζ_12 built from two-dimensional classes of level dividing 12.
pub const LEVEL12: &[TwistTableRow] = &[
    row12("z4,z4^3,z12", "z4^3", "1,-1,z6^5"),
    row12("z4,z4^3,z12", "z4", "1,-1,z3"),
    row12("z4,z4^3,z12", "z12^11", "1,z3^2,z6"),
    row12("z4,z12,z12^7", "z4^3", "1,z3,z6^5"),
    row12("z4,z12,z12^7", "z12^11", "1,-1,z6"),
    row12("z4,z12,z12^7", "z12^5", "1,-1,z3^2"),
    row12("z4^3,z12,z12^5", "z4", "1,z3,z3^2"),
    row12("z4^3,z12,z12^5", "z12^11", "1,z3,z3^2"),
    row12("z4^3,z12,z12^5", "z12^7", "1,z3,z3^2"),
    row12("z4^3,z12,z12^7", "z4", "1,z3,z6^5"),
    row12("z4^3,z12,z12^7", "z12^11", "1,-1,z3^2"),
    row12("z4^3,z12,z12^7", "z12^5", "1,-1,z6"),
    row12("z12,z12^5,z12^7", "z12^11", "1,-1,z3"),
    row12("z12,z12^5,z12^7", "z12^7", "1,z3^2,z6"),
    row12("z12,z12^5,z12^7", "z12^5", "1,-1,z6^5"),
    row12("z12,z12^5,z12^11", "z12^11", "1,z3,z6^5"),
    row12("z12,z12^5,z12^11", "z12^7", "1,-1,z3^2"),
    row12("z12,z12^5,z12^11", "z12", "1,-1,z6"),
];
