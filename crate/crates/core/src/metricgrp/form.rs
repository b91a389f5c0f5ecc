//! Quadratic forms on finite abelian groups, their enumeration and isometry classes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteAbelianGroup, MetricError};
use crate::exactnum::arith::gcd_u64;
use crate::exactnum::{CycNumber, RootOfUnity};
use crate::moddata::ModularData;

/// Largest group accepted by [`enumerate_forms`].
pub const MAX_ENUM_ORDER: usize = 64;
/// Largest number of parameter tuples [`enumerate_forms`] will walk.
pub const MAX_ENUM_PARAMS: u128 = 1 << 24;
/// Largest group accepted by [`isometry_classes`].
pub const MAX_AUT_ORDER: usize = 16;

/// A quadratic form stored as its full value table, indexed like [`FiniteAbelianGroup::element`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    group: FiniteAbelianGroup,
    values: Vec<RootOfUnity>,
}

impl QuadraticForm {
    /// Check every invariant of a quadratic form, nondegeneracy included.
    pub fn new(group: FiniteAbelianGroup, values: Vec<RootOfUnity>) -> Result<Self, MetricError> {
        if values.len() != group.order() {
            return Err(MetricError::Invalid(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        let q = QuadraticForm { group, values };
        q.check()?;
        Ok(q)
    }

    /// The form x ↦ Π q_i^{x_i²} Π_{i<j} b_ij^{x_i x_j}.
    pub fn from_generators(
        group: FiniteAbelianGroup,
        diag: &[RootOfUnity],
        off: &[Vec<RootOfUnity>],
    ) -> Result<Self, MetricError> {
        let k = group.rank();
        if diag.len() != k {
            return Err(MetricError::Invalid(format!("{} generator values for rank {k}", diag.len())));
        }
        let values = group
            .elements()
            .iter()
            .map(|x| {
                let mut v = RootOfUnity::one();
                for i in 0..k {
                    v = v.mul(&diag[i].pow((x[i] * x[i]) as i64));
                    for j in i + 1..k {
                        let c = off.get(i).and_then(|r| r.get(j)).copied().unwrap_or_else(RootOfUnity::one);
                        v = v.mul(&c.pow((x[i] * x[j]) as i64));
                    }
                }
                v
            })
            .collect();
        Self::new(group, values)
    }

    /// The form q(x) = ζ^{a x²} on C_n, with ζ of order 2n for even n and n for odd n.
    pub fn cyclic(n: u64, a: i64) -> Result<Self, MetricError> {
        let m = if n % 2 == 0 { 2 * n } else { n };
        Self::from_generators(FiniteAbelianGroup::cyclic(n), &[RootOfUnity::new(a, m)], &[])
    }

    /// Orthogonal sum on the product group.
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.group.factors().to_vec();
        factors.extend_from_slice(other.group.factors());
        let group = FiniteAbelianGroup::new(factors).expect("factors ≥ 2");
        let (g1, g2) = (self.group.order(), other.group.order());
        let values = (0..g1 * g2).map(|i| self.values[i % g1].mul(&other.values[i / g1])).collect();
        QuadraticForm { group, values }
    }

    fn check(&self) -> Result<(), MetricError> {
        let g = &self.group;
        let n = g.order();
        let e2 = 2 * g.exponent();
        if !self.values[0].is_one() {
            return Err(MetricError::Invalid("q(0) ≠ 1".into()));
        }
        if let Some(x) = self.values.iter().position(|v| e2 % v.order() != 0) {
            return Err(MetricError::Invalid(format!("q at element {x} has order not dividing {e2}")));
        }
        for x in 0..n {
            if self.values[g.neg(x)] != self.values[x] {
                return Err(MetricError::Invalid(format!("q(-x) ≠ q(x) at element {x}")));
            }
            for a in 2..g.exponent() as i64 {
                if self.values[g.scale(x, a)] != self.values[x].pow(a * a) {
                    return Err(MetricError::Invalid(format!("q({a}x) ≠ q(x)^{} at element {x}", a * a)));
                }
            }
        }
        let add = g.addition_table();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.bichar_with(&add, add[x][y], z);
                    let rhs = self.bichar_with(&add, x, z).mul(&self.bichar_with(&add, y, z));
                    if lhs != rhs {
                        return Err(MetricError::Invalid(format!("b not bilinear at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        if let Some(x) = (1..n).find(|&x| (0..n).all(|y| self.bichar_with(&add, x, y).is_one())) {
            return Err(MetricError::Degenerate(format!("element {x} lies in the radical of b")));
        }
        Ok(())
    }

    fn bichar_with(&self, add: &[Vec<usize>], x: usize, y: usize) -> RootOfUnity {
        self.values[add[x][y]].div(&self.values[x].mul(&self.values[y]))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn value(&self, x: usize) -> RootOfUnity {
        self.values[x]
    }

    /// b(x, y) = q(x + y) / (q(x) q(y)).
    pub fn bichar(&self, x: usize, y: usize) -> RootOfUnity {
        self.values[self.group.add(x, y)].div(&self.values[x].mul(&self.values[y]))
    }

    /// Values on the cyclic generators.
    pub fn generator_values(&self) -> Vec<RootOfUnity> {
        (0..self.group.rank()).map(|i| self.values[self.group.generator(i)]).collect()
    }

    pub fn twist_set(&self) -> BTreeSet<RootOfUnity> {
        self.values.iter().copied().collect()
    }

    /// Σ_x q(x)^m.
    pub fn gauss_sum(&self, m: i64) -> CycNumber {
        let terms: Vec<CycNumber> = self.values.iter().map(|v| CycNumber::from_root(&v.pow(m))).collect();
        CycNumber::sum(&terms)
    }

    /// Pullback along the endomorphism sending generator i to element `images[i]`.
    fn pullback(&self, images: &[usize]) -> Vec<RootOfUnity> {
        let g = &self.group;
        (0..g.order())
            .map(|x| {
                let e = g.element(x);
                let y = e.iter().zip(images).fold(0, |acc, (&c, &im)| g.add(acc, g.scale(im, c as i64)));
                self.values[y]
            })
            .collect()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generator_values().iter().map(|v| v.to_string()).collect();
        write!(f, "C({}, q)", self.group)?;
        if !gens.is_empty() {
            write!(f, " q(e)=[{}]", gens.join(", "))?;
        }
        let g = &self.group;
        let mut off = Vec::new();
        for i in 0..g.rank() {
            for j in i + 1..g.rank() {
                let b = self.bichar(g.generator(i), g.generator(j));
                if !b.is_one() {
                    off.push(format!("b(e{i},e{j})={b}"));
                }
            }
        }
        if !off.is_empty() {
            write!(f, " {}", off.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponent data of a form: q(x) = ζ_M^{Σ a_i x_i² + Σ_{i<j} c_ij x_i x_j} with M = 2 exp(G).
struct Params {
    m: u64,
    diag_step: Vec<u64>,
    off_step: Vec<Vec<u64>>,
}

impl Params {
    fn new(g: &FiniteAbelianGroup) -> Self {
        let m = 2 * g.exponent();
        let f = g.factors();
        let diag_step = f.iter().map(|&n| if n % 2 == 0 { m / (2 * n) } else { m / n }).collect();
        let off_step = f.iter().map(|&a| f.iter().map(|&b| m / gcd_u64(a, b)).collect()).collect();
        Params { m, diag_step, off_step }
    }

    fn count(&self) -> u128 {
        let k = self.diag_step.len();
        let mut c: u128 = self.diag_step.iter().map(|&s| (self.m / s) as u128).product();
        for i in 0..k {
            for j in i + 1..k {
                c = c.saturating_mul((self.m / self.off_step[i][j]) as u128);
            }
        }
        c
    }
}

/// All nondegenerate quadratic forms on `g`, in a fixed parameter order.
///
/// The bilinear part (b(e_i, e_i) and b(e_i, e_j)) is enumerated first and
/// screened for nondegeneracy; each survivor is then lifted to every q with
/// that bilinear form.
pub fn enumerate_forms(g: &FiniteAbelianGroup) -> Result<Vec<QuadraticForm>, MetricError> {
    if g.order() > MAX_ENUM_ORDER {
        return Err(MetricError::TooLarge(format!("|G| = {} > {MAX_ENUM_ORDER}", g.order())));
    }
    let p = Params::new(g);
    if p.count() > MAX_ENUM_PARAMS {
        return Err(MetricError::TooLarge(format!("{} parameter tuples on {g}", p.count())));
    }
    let k = g.rank();
    if k == 0 {
        return Ok(vec![QuadraticForm { group: g.clone(), values: vec![RootOfUnity::one()] }]);
    }
    let m = p.m;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let off_ranges: Vec<u64> = pairs.iter().map(|&(i, j)| m / p.off_step[i][j]).collect();
    // a_i = t·step_i; for even n_i, t and t + n_i give the same b(e_i, e_i)
    let bdiag_ranges: Vec<u64> = g.factors().to_vec();
    let elems = g.elements();
    let nonzero = &elems[1..];

    let total_b: u64 = bdiag_ranges.iter().chain(&off_ranges).product();
    let bdata: Vec<(Vec<u64>, Vec<u64>)> = (0..total_b)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut bd = Vec::with_capacity(k);
            for &r in &bdiag_ranges {
                bd.push(idx % r);
                idx /= r;
            }
            let mut off = Vec::with_capacity(pairs.len());
            for &r in &off_ranges {
                off.push(idx % r);
                idx /= r;
            }
            // B(x, e_j) = 2a_j x_j + Σ_{i≠j} c_ij x_i (mod M)
            let two_a: Vec<u64> = (0..k).map(|i| (bd[i] * 2 * p.diag_step[i]) % m).collect();
            let mut c = vec![vec![0u64; k]; k];
            for (t, &(i, j)) in pairs.iter().enumerate() {
                c[i][j] = off[t] * p.off_step[i][j] % m;
                c[j][i] = c[i][j];
            }
            let degenerate = nonzero.iter().any(|x| {
                (0..k).all(|j| {
                    let s: u64 = (0..k).map(|i| if i == j { two_a[j] * x[j] } else { c[i][j] * x[i] }).sum();
                    s % m == 0
                })
            });
            (!degenerate).then_some((bd, off))
        })
        .collect();

    let mut out = Vec::new();
    for (bd, off) in bdata {
        let lifts: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                let base = bd[i] * p.diag_step[i];
                if g.factors()[i] % 2 == 0 {
                    vec![base, base + m / 2]
                } else {
                    vec![base]
                }
            })
            .collect();
        let mut choice = vec![0usize; k];
        loop {
            let a: Vec<u64> = (0..k).map(|i| lifts[i][choice[i]]).collect();
            let values = elems
                .iter()
                .map(|x| {
                    let mut e: u64 = 0;
                    for i in 0..k {
                        e += a[i] * (x[i] * x[i] % m);
                    }
                    for (t, &(i, j)) in pairs.iter().enumerate() {
                        e += off[t] * p.off_step[i][j] % m * (x[i] * x[j] % m);
                    }
                    RootOfUnity::new((e % m) as i64, m)
                })
                .collect();
            out.push(QuadraticForm { group: g.clone(), values });
            let mut i = 0;
            while i < k {
                choice[i] += 1;
                if choice[i] < lifts[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok(out)
}

/// Pointed modular data: S[x][y] = q(x) q(y) / q(x + y), T[x] = q(x).
pub fn metric_modular_data(q: &QuadraticForm) -> ModularData {
    let g = &q.group;
    let n = g.order();
    let add = g.addition_table();
    let s = (0..n)
        .map(|x| (0..n).map(|y| CycNumber::from_root(&q.bichar_with(&add, x, y).inv())).collect())
        .collect();
    ModularData::new(s, q.values.clone()).expect("square data of matching size")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistFilter {
    /// Twist set equal to the allowed set.
    Exact,
    /// Twist set contained in the allowed set.
    Subset,
}

pub fn filter_by_twists(forms: &[QuadraticForm], allowed: &BTreeSet<RootOfUnity>, mode: TwistFilter) -> Vec<QuadraticForm> {
    forms
        .iter()
        .filter(|q| {
            let ts = q.twist_set();
            match mode {
                TwistFilter::Exact => &ts == allowed,
                TwistFilter::Subset => ts.is_subset(allowed),
            }
        })
        .cloned()
        .collect()
}

/// Automorphisms of `g`, each given by the images of the cyclic generators.
pub fn automorphisms(g: &FiniteAbelianGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let k = g.rank();
    let candidates: Vec<Vec<usize>> =
        g.factors().iter().map(|&f| (0..n).filter(|&x| f % g.element_order(x) == 0).collect()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    if k == 0 {
        return vec![Vec::new()];
    }
    loop {
        let images: Vec<usize> = (0..k).map(|i| candidates[i][choice[i]]).collect();
        let mut seen = vec![false; n];
        let mut injective = true;
        for x in 0..n {
            let e = g.element(x);
            let y = e.iter().zip(&images).fold(0, |acc, (&c, &im)| g.add(acc, g.scale(im, c as i64)));
            if seen[y] {
                injective = false;
                break;
            }
            seen[y] = true;
        }
        if injective {
            out.push(images);
        }
        let mut i = 0;
        while i < k {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

/// Partition forms on one group into Aut(G)-orbits. Classes keep input order.
pub fn isometry_classes(forms: &[QuadraticForm]) -> Result<Vec<Vec<QuadraticForm>>, MetricError> {
    let Some(first) = forms.first() else {
        return Ok(Vec::new());
    };
    let g = first.group.clone();
    if forms.iter().any(|q| q.group != g) {
        return Err(MetricError::Invalid("forms on different groups".into()));
    }
    if g.order() > MAX_AUT_ORDER {
        return Err(MetricError::TooLarge(format!("|G| = {} > {MAX_AUT_ORDER} for the automorphism search", g.order())));
    }
    let auts = automorphisms(&g);
    let mut class_of: Vec<Option<usize>> = vec![None; forms.len()];
    let mut classes: Vec<Vec<QuadraticForm>> = Vec::new();
    for i in 0..forms.len() {
        if class_of[i].is_some() {
            continue;
        }
        let orbit: HashSet<Vec<RootOfUnity>> = auts.par_iter().map(|a| forms[i].pullback(a)).collect();
        let c = classes.len();
        classes.push(Vec::new());
        for j in i..forms.len() {
            if class_of[j].is_none() && orbit.contains(&forms[j].values) {
                class_of[j] = Some(c);
                classes[c].push(forms[j].clone());
            }
        }
    }
    Ok(classes)
}

/// One representative per isometry class, over every group of the given order.
pub fn metric_groups_of_order(n: u64) -> Result<Vec<QuadraticForm>, MetricError> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<QuadraticForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache").get(&n) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    for g in super::abelian_groups_of_order(n) {
        let forms = enumerate_forms(&g)?;
        out.extend(isometry_classes(&forms)?.into_iter().map(|c| c[0].clone()));
    }
    cache.lock().expect("cache").insert(n, out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moddata::validate;

    fn root(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        let c2 = enumerate_forms(&FiniteAbelianGroup::cyclic(2)).unwrap();
        let vals: Vec<RootOfUnity> = c2.iter().map(|q| q.value(1)).collect();
        assert_eq!(vals, vec![root("i"), root("-i")]);
        assert_eq!(enumerate_forms(&FiniteAbelianGroup::cyclic(3)).unwrap().len(), 2);
        let c4 = enumerate_forms(&FiniteAbelianGroup::cyclic(4)).unwrap();
        assert_eq!(c4.len(), 4);
        assert!(c4.iter().all(|q| q.value(1).order() == 8));
        assert_eq!(enumerate_forms(&FiniteAbelianGroup::trivial()).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_rejected() {
        let err = QuadraticForm::from_generators(FiniteAbelianGroup::cyclic(4), &[root("i")], &[]);
        assert!(matches!(err, Err(MetricError::Degenerate(_))));
        let bad = QuadraticForm::new(FiniteAbelianGroup::cyclic(2), vec![RootOfUnity::one(), root("z3")]);
        assert!(matches!(bad, Err(MetricError::Invalid(_))));
    }

    #[test]
    fn semion_data() {
        let q = QuadraticForm::cyclic(2, 1).unwrap();
        let md = metric_modular_data(&q);
        let r = validate(&md);
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(md.central_charge().unwrap(), RootOfUnity::new(1, 8));
    }
}
