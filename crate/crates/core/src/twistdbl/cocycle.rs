//! Normalized 3-cocycles on finite abelian groups.

use std::fmt;

use serde::Serialize;

use super::DoubleError;
use crate::exactnum::arith::gcd_u64;
use crate::exactnum::RootOfUnity;
use crate::metricgrp::FiniteAbelianGroup;

/// Largest group for [`enumerate_cocycle_classes`].
pub const MAX_COCYCLE_ORDER: usize = 8;
/// Largest group for which values are tabulated at all.
pub const MAX_TABLE_ORDER: usize = 64;

/// One parameter of the standard abelian representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CocycleParam {
    /// ζ_{n_i}^{p a_i carry(b_i, c_i)}.
    Single { i: usize, p: u64 },
    /// ζ_{n_i}^{p a_i carry(b_j, c_j)}, i < j.
    Pair { i: usize, j: usize, p: u64 },
    /// ζ_{gcd(n_i, n_j, n_k)}^{p a_i b_j c_k}, i < j < k.
    Triple { i: usize, j: usize, k: usize, p: u64 },
}

/// A normalized 3-cocycle with its full value table, `values[(a·|G| + b)·|G| + c]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeCocycle {
    group: FiniteAbelianGroup,
    params: Vec<CocycleParam>,
    #[serde(skip)]
    values: Vec<RootOfUnity>,
}

fn carry(b: u64, c: u64, n: u64) -> u64 {
    u64::from(b + c >= n)
}

/// Parameter ranges in enumeration order: singles, then pairs, then triples.
fn param_slots(g: &FiniteAbelianGroup) -> Vec<(CocycleParam, u64)> {
    let f = g.factors();
    let k = f.len();
    let mut out = Vec::new();
    for i in 0..k {
        out.push((CocycleParam::Single { i, p: 0 }, f[i]));
    }
    for i in 0..k {
        for j in i + 1..k {
            out.push((CocycleParam::Pair { i, j, p: 0 }, gcd_u64(f[i], f[j])));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                out.push((CocycleParam::Triple { i, j, k: l, p: 0 }, gcd_u64(gcd_u64(f[i], f[j]), f[l])));
            }
        }
    }
    out
}

fn with_p(slot: CocycleParam, p: u64) -> CocycleParam {
    match slot {
        CocycleParam::Single { i, .. } => CocycleParam::Single { i, p },
        CocycleParam::Pair { i, j, .. } => CocycleParam::Pair { i, j, p },
        CocycleParam::Triple { i, j, k, .. } => CocycleParam::Triple { i, j, k, p },
    }
}

/// |H³(G, C^×)| = Π n_i · Π_{i<j} gcd(n_i, n_j) · Π_{i<j<k} gcd(n_i, n_j, n_k).
pub fn h3_order(g: &FiniteAbelianGroup) -> u64 {
    param_slots(g).iter().map(|(_, r)| r).product()
}

impl ThreeCocycle {
    /// The representative with the given parameters; zero parameters may be omitted.
    pub fn from_params(group: &FiniteAbelianGroup, params: &[CocycleParam]) -> Result<Self, DoubleError> {
        let n = group.order();
        if n > MAX_TABLE_ORDER {
            return Err(DoubleError::TooLarge(format!("|G| = {n} > {MAX_TABLE_ORDER}")));
        }
        let f = group.factors();
        let k = f.len();
        for p in params {
            let ok = match *p {
                CocycleParam::Single { i, .. } => i < k,
                CocycleParam::Pair { i, j, .. } => i < j && j < k,
                CocycleParam::Triple { i, j, k: l, .. } => i < j && j < l && l < k,
            };
            if !ok {
                return Err(DoubleError::Invalid(format!("parameter {p:?} does not fit {group}")));
            }
        }
        let elems = group.elements();
        let mut values = Vec::with_capacity(n * n * n);
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let mut v = RootOfUnity::one();
                    for p in params {
                        let term = match *p {
                            CocycleParam::Single { i, p } => {
                                RootOfUnity::new((p * a[i] * carry(b[i], c[i], f[i])) as i64, f[i])
                            }
                            CocycleParam::Pair { i, j, p } => {
                                RootOfUnity::new((p * a[i] * carry(b[j], c[j], f[j])) as i64, f[i])
                            }
                            CocycleParam::Triple { i, j, k, p } => {
                                let m = gcd_u64(gcd_u64(f[i], f[j]), f[k]);
                                RootOfUnity::new((p * a[i] * b[j] * c[k]) as i64, m)
                            }
                        };
                        v = v.mul(&term);
                    }
                    values.push(v);
                }
            }
        }
        let mut params: Vec<CocycleParam> = params.iter().copied().filter(|p| param_value(p) != 0).collect();
        params.sort();
        Ok(ThreeCocycle { group: group.clone(), params, values })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Result<Self, DoubleError> {
        Self::from_params(group, &[])
    }

    /// Tabulated cocycle; checked for normalization and the cocycle identity.
    pub fn from_values(group: &FiniteAbelianGroup, values: Vec<RootOfUnity>) -> Result<Self, DoubleError> {
        let n = group.order();
        if values.len() != n * n * n {
            return Err(DoubleError::Invalid(format!("{} values for |G|³ = {}", values.len(), n * n * n)));
        }
        let w = ThreeCocycle { group: group.clone(), params: Vec::new(), values };
        w.verify()?;
        Ok(w)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn params(&self) -> &[CocycleParam] {
        &self.params
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(RootOfUnity::is_one)
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> RootOfUnity {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    /// Normalization and ω(b,c,d) ω(a,b+c,d) ω(a,b,c) = ω(a+b,c,d) ω(a,b,c+d) on all quadruples.
    pub fn verify(&self) -> Result<(), DoubleError> {
        let n = self.group.order();
        let add = self.group.addition_table();
        for a in 0..n {
            for b in 0..n {
                if !(self.get(0, a, b).is_one() && self.get(a, 0, b).is_one() && self.get(a, b, 0).is_one()) {
                    return Err(DoubleError::Invalid(format!("not normalized at ({a}, {b})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let abc = self.get(a, b, c);
                    for d in 0..n {
                        let lhs = self.get(b, c, d).mul(&self.get(a, add[b][c], d)).mul(&abc);
                        let rhs = self.get(add[a][b], c, d).mul(&self.get(a, b, add[c][d]));
                        if lhs != rhs {
                            return Err(DoubleError::Invalid(format!("cocycle identity fails at ({a}, {b}, {c}, {d})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn param_value(p: &CocycleParam) -> u64 {
    match *p {
        CocycleParam::Single { p, .. } | CocycleParam::Pair { p, .. } | CocycleParam::Triple { p, .. } => p,
    }
}

impl fmt::Display for ThreeCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .params
            .iter()
            .map(|p| match *p {
                CocycleParam::Single { i, p } => format!("I[{i}]={p}"),
                CocycleParam::Pair { i, j, p } => format!("II[{i}{j}]={p}"),
                CocycleParam::Triple { i, j, k, p } => format!("III[{i}{j}{k}]={p}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for ThreeCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω on {}: {self}", self.group)
    }
}

/// Parameters of the representative with the given index; digits run over singles, pairs, triples.
pub fn cocycle_params(g: &FiniteAbelianGroup, mut index: u64) -> Result<Vec<CocycleParam>, DoubleError> {
    let total = h3_order(g);
    if index >= total {
        return Err(DoubleError::Invalid(format!("cocycle index {index} ≥ |H³| = {total}")));
    }
    let mut out = Vec::new();
    for (slot, r) in param_slots(g) {
        out.push(with_p(slot, index % r));
        index /= r;
    }
    Ok(out)
}

pub fn cocycle_by_index(g: &FiniteAbelianGroup, index: u64) -> Result<ThreeCocycle, DoubleError> {
    ThreeCocycle::from_params(g, &cocycle_params(g, index)?)
}

/// One representative per class of H³(G, C^×), indexed as in [`cocycle_by_index`].
pub fn enumerate_cocycle_classes(g: &FiniteAbelianGroup) -> Result<Vec<ThreeCocycle>, DoubleError> {
    if g.order() > MAX_COCYCLE_ORDER {
        return Err(DoubleError::TooLarge(format!("|G| = {} > {MAX_COCYCLE_ORDER}", g.order())));
    }
    (0..h3_order(g)).map(|i| cocycle_by_index(g, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let g = |f: Vec<u64>| FiniteAbelianGroup::new(f).unwrap();
        assert_eq!(h3_order(&FiniteAbelianGroup::trivial()), 1);
        assert_eq!(h3_order(&g(vec![2])), 2);
        assert_eq!(h3_order(&g(vec![2, 2])), 8);
        assert_eq!(h3_order(&g(vec![2, 2, 2])), 128);
        assert_eq!(h3_order(&g(vec![4, 2])), 16);
    }

    #[test]
    fn representatives_are_cocycles() {
        for f in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4]] {
            let g = FiniteAbelianGroup::new(f).unwrap();
            for w in enumerate_cocycle_classes(&g).unwrap() {
                w.verify().unwrap();
            }
        }
        let g = FiniteAbelianGroup::new(vec![2]).unwrap();
        let w = cocycle_by_index(&g, 1).unwrap();
        assert_eq!(w.get(1, 1, 1), RootOfUnity::minus_one());
    }
}
