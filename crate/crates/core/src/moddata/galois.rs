//! The permutation of simples induced by a Galois automorphism.

use std::collections::HashMap;

use serde::Serialize;

use super::{ModDataError, ModularData};
use crate::exactnum::arith::{gcd_u64, lcm_u64, rem_i64};
use crate::exactnum::CycNumber;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisPermutation {
    pub k: i64,
    /// σ̂(x) = perm[x].
    pub perm: Vec<usize>,
    /// Whether t_σ̂(x) = σ²(t_x) holds for the normalized twists.
    pub t_relation: bool,
}

fn column_characters(md: &ModularData) -> Result<Vec<Vec<CycNumber>>, ModDataError> {
    let r = md.rank();
    let s = md.s();
    (0..r)
        .map(|x| {
            let d = &s[0][x];
            if let Some(q) = d.to_rational() {
                let inv = q.recip();
                Ok((0..r).map(|j| s[j][x].scale(&inv)).collect())
            } else {
                let inv = d.inv()?;
                Ok((0..r).map(|j| &s[j][x] * &inv).collect())
            }
        })
        .collect()
}

/// σ̂ for σ: zeta ↦ zeta^k, with σ(S_jx / S_0x) = S_jσ̂(x) / S_0σ̂(x).
pub fn galois_permutation(md: &ModularData, k: i64) -> Result<GaloisPermutation, ModDataError> {
    let nd = md.normalized()?;
    let n = lcm_u64(md.conductor(), nd.n);
    if gcd_u64(rem_i64(k, n), n) != 1 {
        return Err(ModDataError::NotCoprime { k, n });
    }
    let chars = column_characters(md)?;
    let index: HashMap<&Vec<CycNumber>, usize> = chars.iter().enumerate().map(|(x, c)| (c, x)).collect();
    let mut perm = Vec::with_capacity(md.rank());
    for c in &chars {
        let image = c.iter().map(|v| v.galois(k)).collect::<Result<Vec<_>, _>>()?;
        perm.push(*index.get(&image).ok_or(ModDataError::NoGaloisPermutation(k))?);
    }
    let mut seen = vec![false; perm.len()];
    if perm.iter().any(|&p| std::mem::replace(&mut seen[p], true)) {
        return Err(ModDataError::NoGaloisPermutation(k));
    }
    let k2 = (k as i128 * k as i128).rem_euclid(n as i128) as i64;
    let t_relation = (0..perm.len()).all(|x| nd.t[perm[x]] == nd.t[x].pow(k2));
    Ok(GaloisPermutation { k, perm, t_relation })
}
