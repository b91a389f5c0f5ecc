//! Fixed-conductor integer arithmetic for bulk matrix work.
//!
//! Elements are integer combinations of powers of zeta_n kept in the power
//! basis; the common denominator is tracked by the caller. Products are formed
//! in the group ring Z[C_n] and reduced once per output entry.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exactnum::cyclo::{cyclo, Cyclo};
use crate::exactnum::CycNumber;

/// Sparse power-basis numerators `(exponent, value)`, sorted, without zeros.
pub(crate) type Elt = Vec<(u32, i128)>;

pub(crate) type Mat = Vec<Vec<Elt>>;

pub(crate) struct Ring {
    pub n: u64,
    c: Arc<Cyclo>,
}

impl Ring {
    pub fn new(n: u64) -> Self {
        Ring { n, c: cyclo(n) }
    }

    /// Numerators of `x` over `den`. `None` if `den` is not a multiple of the
    /// denominator of `x`, the field is too small, or a value leaves i128.
    pub fn elt(&self, x: &CycNumber, den: &BigInt) -> Option<Elt> {
        if self.n % x.conductor() != 0 || !(den % x.denominator()).is_zero() {
            return None;
        }
        let f = den / x.denominator();
        let mut out = Vec::new();
        for (e, v) in x.numerators_in(self.n).iter().enumerate() {
            if !v.is_zero() {
                out.push((e as u32, (v * &f).to_i128()?));
            }
        }
        Some(out)
    }

    pub fn scratch(&self) -> Vec<i128> {
        vec![0; self.n as usize]
    }

    /// acc += zeta^shift * a * b, in the group ring.
    pub fn mul_acc(&self, acc: &mut [i128], a: &Elt, b: &Elt, shift: u64) {
        let n = self.n as usize;
        let s = shift as usize % n;
        for &(i, x) in a {
            let base = i as usize + s;
            for &(j, y) in b {
                let e = base + j as usize;
                acc[if e >= n { e % n } else { e }] += x * y;
            }
        }
    }

    /// acc += c * zeta^shift * a.
    pub fn add_acc(&self, acc: &mut [i128], a: &Elt, c: i128, shift: u64) {
        let n = self.n as usize;
        let s = shift as usize % n;
        for &(i, x) in a {
            acc[(i as usize + s) % n] += c * x;
        }
    }

    /// Reduce a group-ring accumulator to the power basis and clear it.
    pub fn reduce(&self, acc: &mut [i128]) -> Elt {
        let phi = self.c.phi;
        let mut out = vec![0i128; phi];
        for (e, v) in acc.iter_mut().enumerate() {
            if *v == 0 {
                continue;
            }
            if e < phi {
                out[e] += *v;
            } else {
                for &(i, r) in self.c.sparse_row(e) {
                    out[i] += *v * r as i128;
                }
            }
            *v = 0;
        }
        out.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(e, v)| (e as u32, v)).collect()
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let mut acc = self.scratch();
        self.mul_acc(&mut acc, a, b, 0);
        self.reduce(&mut acc)
    }

    /// zeta^s * a.
    pub fn shift(&self, a: &Elt, s: u64) -> Elt {
        let mut acc = self.scratch();
        self.add_acc(&mut acc, a, 1, s);
        self.reduce(&mut acc)
    }

    pub fn scale(a: &Elt, c: i128) -> Elt {
        if c == 0 {
            return Vec::new();
        }
        a.iter().map(|&(e, v)| (e, v * c)).collect()
    }

    /// Matrix product over the common field; denominators multiply.
    pub fn matmul(&self, a: &Mat, b: &Mat) -> Mat {
        let cols = b.first().map_or(0, |r| r.len());
        a.par_iter()
            .map(|row| {
                let mut acc = self.scratch();
                (0..cols)
                    .map(|k| {
                        for (j, x) in row.iter().enumerate() {
                            if !x.is_empty() {
                                self.mul_acc(&mut acc, x, &b[j][k], 0);
                            }
                        }
                        self.reduce(&mut acc)
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
impl Ring {
    pub fn to_cyc(&self, a: &Elt, den: &BigInt) -> CycNumber {
        let mut num = vec![BigInt::zero(); self.c.phi];
        for &(e, v) in a {
            num[e as usize] = BigInt::from(v);
        }
        CycNumber::from_parts(self.n, num, den.clone()).expect("nonzero denominator")
    }

    /// The automorphism zeta ↦ zeta^k, `k` coprime to n.
    pub fn galois(&self, a: &Elt, k: u64) -> Elt {
        let n = self.n;
        let mut acc = self.scratch();
        for &(i, x) in a {
            acc[((i as u64 * k) % n) as usize] += x;
        }
        self.reduce(&mut acc)
    }
}

/// Value of a rational element, if it is one.
pub(crate) fn rational_part(a: &Elt) -> Option<i128> {
    match a.as_slice() {
        [] => Some(0),
        [(0, v)] => Some(*v),
        _ => None,
    }
}
