//! Irreducible SL(2, Z/n)-representations with at most three distinct t-eigenvalues.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{parse_product, Sl2Error};
use crate::exactnum::arith::{gcd_u64, lcm_u64};
use crate::exactnum::RootOfUnity;

/// One isomorphism class, named as `base ⊗ C_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RepDescriptor {
    pub name: String,
    /// Name of the untwisted representation this one is built from.
    pub base: String,
    /// j in the one-dimensional factor C_j, 0 when untwisted.
    pub char_index: u8,
    pub level: u64,
    pub dim: u32,
    /// Empty when `external` is set.
    pub t_spectrum: BTreeSet<RootOfUnity>,
    /// Spectrum not tabulated here; the row only counts toward class totals.
    pub external: bool,
    /// Table row the class belongs to.
    pub row: &'static str,
}

impl fmt::Debug for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (level {}, dim {}) {:?}", self.name, self.level, self.dim, self.t_spectrum)
    }
}

/// (row, base, j, level, dim, spectrum); spectra in the `w*z8^5` product grammar.
type Row = (&'static str, &'static str, u8, u64, u32, &'static str);

const ONE_OR_TWO: &[Row] = &[
    ("N_1(χ_1)", "N_1(χ_1)", 0, 2, 2, "-1,1"),
    ("N_1(χ)", "N_1(χ)", 0, 3, 2, "z3,z3^2"),
    ("N_1(χ)⊗C_4,N_1(χ)⊗C_8", "N_1(χ)", 4, 3, 2, "1,z3^2"),
    ("N_1(χ)⊗C_4,N_1(χ)⊗C_8", "N_1(χ)", 8, 3, 2, "1,z3"),
    ("N_2(χ)", "N_2(χ)", 0, 4, 2, "z4,z4^3"),
    ("R_1(1,χ_{-1}),R_2(r,χ_{-1})", "R_1(1,χ_{-1})", 0, 5, 2, "z5,z5^4"),
    ("R_1(1,χ_{-1}),R_2(r,χ_{-1})", "R_2(r,χ_{-1})", 0, 5, 2, "z5^2,z5^3"),
    ("N_3(χ)_+⊗C_j", "N_3(χ)_+", 0, 8, 2, "z8^3,z8^5"),
    ("N_3(χ)_+⊗C_j", "N_3(χ)_+", 6, 8, 2, "z8,z8^7"),
    ("N_3(χ)_+⊗C_j", "N_3(χ)_+", 9, 8, 2, "z8,z8^3"),
    ("N_3(χ)_+⊗C_j", "N_3(χ)_+", 3, 8, 2, "z8^5,z8^7"),
];

const THREE: &[Row] = &[
    ("N_1(χ_1)", "N_1(χ_1)", 0, 3, 3, "1,z3,z3^2"),
    ("D_2(χ)_+,D_2(χ)_+⊗C_6", "D_2(χ)_+", 0, 4, 3, "1,-1,z4"),
    ("D_2(χ)_+,D_2(χ)_+⊗C_6", "D_2(χ)_+", 6, 4, 3, "1,-1,z4^3"),
    ("D_2(χ)_+⊗C_9,D_2(χ)_+⊗C_3", "D_2(χ)_+", 9, 4, 3, "1,z4,z4^3"),
    ("D_2(χ)_+⊗C_9,D_2(χ)_+⊗C_3", "D_2(χ)_+", 3, 4, 3, "-1,z4,z4^3"),
    ("R_1(1,χ_1),R_1(2,χ_1)", "R_1(1,χ_1)", 0, 5, 3, "1,z5,z5^4"),
    ("R_1(1,χ_1),R_1(2,χ_1)", "R_1(2,χ_1)", 0, 5, 3, "1,z5^2,z5^3"),
    ("R_1(1,χ_{-1}),R_1(2,χ_{-1})", "R_1(1,χ_{-1})", 0, 7, 3, "z7,z7^2,z7^4"),
    ("R_1(1,χ_{-1}),R_1(2,χ_{-1})", "R_1(2,χ_{-1})", 0, 7, 3, "z7^3,z7^5,z7^6"),
    ("R_3^0(1,3,χ)_±,R_3^0(1,3,χ)_±⊗C_6", "R_3^0(1,3,χ)_+", 0, 8, 3, "1,z8,z8^5"),
    ("R_3^0(1,3,χ)_±,R_3^0(1,3,χ)_±⊗C_6", "R_3^0(1,3,χ)_-", 0, 8, 3, "1,z8^3,z8^7"),
    ("R_3^0(1,3,χ)_±,R_3^0(1,3,χ)_±⊗C_6", "R_3^0(1,3,χ)_+", 6, 8, 3, "-1,z8,z8^5"),
    ("R_3^0(1,3,χ)_±,R_3^0(1,3,χ)_±⊗C_6", "R_3^0(1,3,χ)_-", 6, 8, 3, "-1,z8^3,z8^7"),
    ("R_3^0(1,3,χ)_±⊗C_3,R_3^0(1,3,χ)_±⊗C_9", "R_3^0(1,3,χ)_+", 3, 8, 3, "z4,z8^3,z8^7"),
    ("R_3^0(1,3,χ)_±⊗C_3,R_3^0(1,3,χ)_±⊗C_9", "R_3^0(1,3,χ)_+", 9, 8, 3, "z4^3,z8^3,z8^7"),
    ("R_3^0(1,3,χ)_±⊗C_3,R_3^0(1,3,χ)_±⊗C_9", "R_3^0(1,3,χ)_-", 3, 8, 3, "z4,z8,z8^5"),
    ("R_3^0(1,3,χ)_±⊗C_3,R_3^0(1,3,χ)_±⊗C_9", "R_3^0(1,3,χ)_-", 9, 8, 3, "z4^3,z8,z8^5"),
];

const LEVEL16_ROW: &str = "R_4^0(1,1,χ)_±⊗C_j,R_4^0(3,1,χ)_±⊗C_j";

fn descriptor(r: &Row) -> RepDescriptor {
    let (row, base, j, level, dim, spec) = *r;
    let name = if j == 0 { base.to_string() } else { format!("{base}⊗C_{j}") };
    let t_spectrum = spec.split(',').map(|t| parse_product(t).expect("table token")).collect();
    RepDescriptor { name, base: base.to_string(), char_index: j, level, dim, t_spectrum, external: false, row }
}

fn one_dimensionals() -> Vec<RepDescriptor> {
    (0..12u8)
        .map(|j| {
            let z = RootOfUnity::new(j as i64, 12);
            RepDescriptor {
                name: format!("C_{j}"),
                base: "C_0".into(),
                char_index: j,
                level: z.order(),
                dim: 1,
                t_spectrum: BTreeSet::from([z]),
                external: false,
                row: "C_j",
            }
        })
        .collect()
}

fn level16() -> Vec<RepDescriptor> {
    let mut out = Vec::new();
    for base in ["R_4^0(1,1,χ)_+", "R_4^0(1,1,χ)_-", "R_4^0(3,1,χ)_+", "R_4^0(3,1,χ)_-"] {
        for j in [0u8, 3, 6, 9] {
            let name = if j == 0 { base.to_string() } else { format!("{base}⊗C_{j}") };
            out.push(RepDescriptor {
                name,
                base: base.into(),
                char_index: j,
                level: 16,
                dim: 3,
                t_spectrum: BTreeSet::new(),
                external: true,
                row: LEVEL16_ROW,
            });
        }
    }
    out
}

/// Every class with at most `max_distinct` t-eigenvalues, up to twisting by a coprime-level C_j.
pub fn rep_table(max_distinct: usize) -> Result<Vec<RepDescriptor>, Sl2Error> {
    if !(1..=3).contains(&max_distinct) {
        return Err(Sl2Error::Unsupported(format!("max_distinct = {max_distinct}")));
    }
    let mut out = one_dimensionals();
    if max_distinct >= 2 {
        out.extend(ONE_OR_TWO.iter().map(descriptor));
    }
    if max_distinct >= 3 {
        out.extend(THREE.iter().map(descriptor));
        out.extend(level16());
    }
    Ok(out)
}

/// Class counts per table row, in table order.
pub fn row_counts(max_distinct: usize) -> Result<Vec<(&'static str, usize)>, Sl2Error> {
    let mut out: Vec<(&'static str, usize)> = Vec::new();
    for d in rep_table(max_distinct)? {
        match out.iter_mut().find(|(r, _)| *r == d.row) {
            Some((_, c)) => *c += 1,
            None => out.push((d.row, 1)),
        }
    }
    Ok(out)
}

fn spectrum_level(s: &BTreeSet<RootOfUnity>) -> u64 {
    s.iter().fold(1, |a, r| lcm_u64(a, r.order()))
}

/// rep ⊗ C_j. Coprime levels give a new class; otherwise only classes listed by name are returned.
pub fn tensor_with_char(rep: &RepDescriptor, j: u8) -> Result<RepDescriptor, Sl2Error> {
    if j >= 12 {
        return Err(Sl2Error::Unsupported(format!("C_{j}")));
    }
    if j == 0 {
        return Ok(rep.clone());
    }
    if rep.external {
        return Err(Sl2Error::External(rep.name.clone()));
    }
    let z = RootOfUnity::new(j as i64, 12);
    let k = (rep.char_index + j) % 12;
    if gcd_u64(rep.level, z.order()) != 1 {
        return rep_table(3)?
            .into_iter()
            .find(|d| d.base == rep.base && d.char_index == k && d.dim == rep.dim && !d.external)
            .ok_or(Sl2Error::NotCoprime { level: rep.level, char_order: z.order() });
    }
    let t_spectrum: BTreeSet<RootOfUnity> = rep.t_spectrum.iter().map(|t| t.mul(&z)).collect();
    let name = twisted_name(&rep.base, k);
    Ok(RepDescriptor {
        name,
        base: rep.base.clone(),
        char_index: k,
        level: spectrum_level(&t_spectrum),
        dim: rep.dim,
        t_spectrum,
        external: false,
        row: rep.row,
    })
}

fn twisted_name(base: &str, k: u8) -> String {
    if base == "C_0" {
        format!("C_{k}")
    } else if k == 0 {
        base.to_string()
    } else {
        format!("{base}⊗C_{k}")
    }
}

/// Every tabulated class twisted by every C_j. Classes are identified by (dim, spectrum);
/// the first name in table order is kept.
pub fn twisted_classes() -> Vec<RepDescriptor> {
    let mut out: Vec<RepDescriptor> = Vec::new();
    let table = rep_table(3).expect("supported");
    for j in 0..12u8 {
        for d in table.iter().filter(|d| !d.external) {
            let z = RootOfUnity::new(j as i64, 12);
            let t_spectrum: BTreeSet<RootOfUnity> = d.t_spectrum.iter().map(|t| t.mul(&z)).collect();
            if out.iter().any(|e| e.dim == d.dim && e.t_spectrum == t_spectrum) {
                continue;
            }
            let k = (d.char_index + j) % 12;
            let name = twisted_name(&d.base, k);
            out.push(RepDescriptor {
                name,
                base: d.base.clone(),
                char_index: k,
                level: spectrum_level(&t_spectrum),
                dim: d.dim,
                t_spectrum,
                external: false,
                row: d.row,
            });
        }
    }
    out
}

/// A set of irreducible summands covering a spectrum; multiplicities are free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSum {
    pub summands: Vec<RepDescriptor>,
}

impl fmt::Display for AdmissibleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|d| format!("m·{}", d.name)).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn connected(summands: &[&RepDescriptor]) -> bool {
    let n = summands.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && !summands[i].t_spectrum.is_disjoint(&summands[j].t_spectrum) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Sets of classes whose spectra lie in `target`, cover it, and form a connected sharing graph.
pub fn admissible_sums(target: &BTreeSet<RootOfUnity>) -> Result<Vec<AdmissibleSum>, Sl2Error> {
    if target.is_empty() || target.len() > 3 {
        return Err(Sl2Error::Unsupported(format!("target spectrum of size {}", target.len())));
    }
    let cands: Vec<RepDescriptor> = twisted_classes().into_iter().filter(|d| d.t_spectrum.is_subset(target)).collect();
    if cands.len() > 24 {
        return Err(Sl2Error::Unsupported(format!("{} candidate classes", cands.len())));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << cands.len()) {
        let chosen: Vec<&RepDescriptor> = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| &cands[i]).collect();
        let union: BTreeSet<RootOfUnity> = chosen.iter().flat_map(|d| d.t_spectrum.iter().copied()).collect();
        if &union == target && connected(&chosen) {
            out.push(AdmissibleSum { summands: chosen.into_iter().cloned().collect() });
        }
    }
    Ok(out)
}
