//! Finite abelian groups given by cyclic factors, with elements as exponent vectors.

use std::fmt;

use serde::Serialize;

use crate::exactnum::arith::{lcm_u64, prime_factors};

/// C_{n_1} × ... × C_{n_k}; the empty factor list is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, String> {
        if let Some(f) = factors.iter().find(|&&f| f < 2) {
            return Err(format!("cyclic factor {f} < 2"));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    /// Parse "4,4" or "2x2x2"; "1" is the trivial group.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split([',', 'x']).map(str::trim).filter(|p| !p.is_empty()).collect();
        let mut factors = Vec::new();
        for p in parts {
            let n: u64 = p.parse().map_err(|_| format!("bad factor {p:?}"))?;
            if n != 1 {
                factors.push(n);
            }
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &b| lcm_u64(a, b))
    }

    /// Exponent vector of the element with the given index (first factor varies fastest).
    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&n| {
                let x = idx as u64 % n;
                idx /= n as usize;
                x
            })
            .collect()
    }

    pub fn index(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (xi, &n) in x.iter().zip(&self.factors).rev() {
            idx = idx * n as usize + (xi % n) as usize;
        }
        idx
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn generator(&self, i: usize) -> usize {
        let mut x = vec![0; self.rank()];
        x[i] = 1;
        self.index(&x)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let z: Vec<u64> = x.iter().zip(&y).zip(&self.factors).map(|((p, q), n)| (p + q) % n).collect();
        self.index(&z)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.element(a);
        let z: Vec<u64> = x.iter().zip(&self.factors).map(|(p, n)| (n - p) % n).collect();
        self.index(&z)
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        let x = self.element(a);
        let z: Vec<u64> = x.iter().zip(&self.factors).map(|(p, &n)| (*p as i64 * k).rem_euclid(n as i64) as u64).collect();
        self.index(&z)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element(a).iter().zip(&self.factors).fold(1, |acc, (&x, &n)| lcm_u64(acc, n / crate::exactnum::arith::gcd_u64(x, n)))
    }

    /// Full addition table, `table[a][b] = a + b`.
    pub fn addition_table(&self) -> Vec<Vec<usize>> {
        let elems = self.elements();
        let g = self.order();
        (0..g)
            .map(|a| {
                (0..g)
                    .map(|b| {
                        let z: Vec<u64> =
                            elems[a].iter().zip(&elems[b]).zip(&self.factors).map(|((p, q), n)| (p + q) % n).collect();
                        self.index(&z)
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C_1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C_{n}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All abelian groups of order `n` up to isomorphism, as products of prime-power cyclic factors.
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    let mut primes: Vec<(u64, u32)> = Vec::new();
    for p in prime_factors(n) {
        let mut e = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        primes.push((p, e));
    }
    let mut out = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for base in &out {
            for part in partitions(e, e) {
                let mut f: Vec<u64> = base.clone();
                f.extend(part.iter().rev().map(|&k| p.pow(k)));
                next.push(f);
            }
        }
        out = next;
    }
    out.into_iter().map(|f| FiniteAbelianGroup::new(f).expect("factors ≥ 2")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_roundtrip() {
        let g = FiniteAbelianGroup::new(vec![2, 4, 3]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.exponent(), 12);
        for i in 0..g.order() {
            assert_eq!(g.index(&g.element(i)), i);
            assert_eq!(g.add(i, g.neg(i)), 0);
        }
        assert_eq!(g.element_order(g.generator(1)), 4);
    }

    #[test]
    fn group_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(FiniteAbelianGroup::parse("4,4").unwrap().factors(), &[4, 4]);
        assert_eq!(FiniteAbelianGroup::parse("1").unwrap(), FiniteAbelianGroup::trivial());
    }
}
