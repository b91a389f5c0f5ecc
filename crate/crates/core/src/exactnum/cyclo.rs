//! Cyclotomic polynomials, power-basis reduction tables and subfield projections.
//!
//! Tables are built once per conductor and shared through a process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::arith::{divisors, totient};

/// Reduction data for Q(zeta_n) in the power basis 1, z, ..., z^(phi-1).
#[derive(Debug)]
pub struct Cyclo {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
    #[cfg_attr(not(test), allow(dead_code))]
    pub poly: Vec<i64>,
    rows: Vec<Vec<i64>>,
    sparse: Vec<Vec<(usize, i64)>>,
}

impl Cyclo {
    /// x^e reduced modulo the cyclotomic polynomial, dense of length phi.
    pub fn row(&self, e: usize) -> &[i64] {
        &self.rows[e % self.period()]
    }

    /// Same as [`Cyclo::row`] but only the nonzero entries.
    pub fn sparse_row(&self, e: usize) -> &[(usize, i64)] {
        &self.sparse[e % self.period()]
    }

    fn period(&self) -> usize {
        // x^n = 1 in the quotient, so rows repeat with period n.
        self.n as usize
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    q
}

fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            let pd = cyclotomic_poly(d, memo);
            num = poly_div_exact(&num, &pd);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn build(n: u64) -> Cyclo {
    let mut memo = HashMap::new();
    let poly = cyclotomic_poly(n, &mut memo);
    let phi = totient(n) as usize;
    debug_assert_eq!(poly.len(), phi + 1);
    let len = n as usize;
    let mut rows = Vec::with_capacity(len);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..len {
        rows.push(cur.clone());
        // multiply by x
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
        }
        cur = next;
    }
    let sparse = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect())
        .collect();
    Cyclo { n, phi, poly, rows, sparse }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Cyclo>>> {
    static C: OnceLock<Mutex<HashMap<u64, Arc<Cyclo>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared reduction tables for conductor `n`.
pub fn cyclo(n: u64) -> Arc<Cyclo> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(c) = cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    let built = Arc::new(build(n));
    cache().lock().unwrap().entry(n).or_insert(built).clone()
}

/// Left inverse of the embedding Q(zeta_m) -> Q(zeta_n) restricted to a set of pivot rows.
#[derive(Debug)]
pub struct Projection {
    /// Images of z_m^e, e < phi(m), as dense vectors in Q(zeta_n).
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    inv: Vec<Vec<BigRational>>,
}

fn build_projection(n: u64, m: u64) -> Projection {
    let cn = cyclo(n);
    let pm = totient(m) as usize;
    let step = (n / m) as usize;
    let basis: Vec<Vec<i64>> = (0..pm).map(|e| cn.row(e * step).to_vec()).collect();
    // choose pivot rows greedily: rows of the phi(n) x phi(m) matrix B
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut lead_cols: Vec<usize> = Vec::new();
    let mut pivots = Vec::new();
    for r in 0..cn.phi {
        let mut v: Vec<BigRational> =
            (0..pm).map(|c| BigRational::from_integer(BigInt::from(basis[c][r]))).collect();
        for (row, &lc) in echelon.iter().zip(&lead_cols) {
            if !v[lc].is_zero() {
                let f = v[lc].clone() / row[lc].clone();
                for c in 0..pm {
                    v[c] -= f.clone() * row[c].clone();
                }
            }
        }
        if let Some(lc) = v.iter().position(|x| !x.is_zero()) {
            echelon.push(v);
            lead_cols.push(lc);
            pivots.push(r);
            if pivots.len() == pm {
                break;
            }
        }
    }
    assert_eq!(pivots.len(), pm, "embedding basis must be independent");
    // invert the square submatrix M[i][c] = basis[c][pivots[i]]
    let mut a: Vec<Vec<BigRational>> = pivots
        .iter()
        .map(|&r| (0..pm).map(|c| BigRational::from_integer(BigInt::from(basis[c][r]))).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..pm)
        .map(|i| (0..pm).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..pm {
        let p = (col..pm).find(|&r| !a[r][col].is_zero()).expect("singular pivot block");
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].clone();
        for j in 0..pm {
            a[col][j] = a[col][j].clone() / piv.clone();
            inv[col][j] = inv[col][j].clone() / piv.clone();
        }
        for r in 0..pm {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..pm {
                    let t = f.clone() * a[col][j].clone();
                    a[r][j] -= t;
                    let t = f.clone() * inv[col][j].clone();
                    inv[r][j] -= t;
                }
            }
        }
    }
    Projection { basis, pivots, inv }
}

fn proj_cache() -> &'static Mutex<HashMap<(u64, u64), Arc<Projection>>> {
    static C: OnceLock<Mutex<HashMap<(u64, u64), Arc<Projection>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn projection(n: u64, m: u64) -> Arc<Projection> {
    if let Some(p) = proj_cache().lock().unwrap().get(&(n, m)) {
        return p.clone();
    }
    let built = Arc::new(build_projection(n, m));
    proj_cache().lock().unwrap().entry((n, m)).or_insert(built).clone()
}

/// If the element with numerators `num` (over a common denominator) in Q(zeta_n)
/// lies in Q(zeta_m), return its coordinates there as (numerators, extra denominator).
pub fn try_descend(n: u64, m: u64, num: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let p = projection(n, m);
    let pm = p.inv.len();
    let mut coords: Vec<BigRational> = vec![BigRational::zero(); pm];
    for (i, row) in p.inv.iter().enumerate() {
        let mut acc = BigRational::zero();
        for (j, f) in row.iter().enumerate() {
            let x = &num[p.pivots[j]];
            if !x.is_zero() && !f.is_zero() {
                acc += f.clone() * BigRational::from_integer(x.clone());
            }
        }
        coords[i] = acc;
    }
    // common denominator
    let mut den = BigInt::one();
    for c in &coords {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let ints: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    // verify B * coords == num * den
    for r in 0..num.len() {
        let mut acc = BigInt::zero();
        for (e, b) in p.basis.iter().enumerate() {
            if b[r] != 0 && !ints[e].is_zero() {
                acc += &ints[e] * b[r];
            }
        }
        if acc != &num[r] * &den {
            return None;
        }
    }
    Some((ints, den))
}
