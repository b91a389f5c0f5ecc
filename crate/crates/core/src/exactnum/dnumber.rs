//! Algebraic d-numbers of degree at most two and the two finite scans built on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::quad::QuadFieldElement;
use super::ExactError;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Degree-two d-number test: the trace squared is divisible by the norm.
pub fn is_d_number(x: &QuadFieldElement) -> Result<bool, ExactError> {
    if x.is_zero() {
        return Err(ExactError::NotIntegral("zero is not a d-number candidate".into()));
    }
    if !x.is_integral() {
        return Err(ExactError::NotIntegral(x.to_string()));
    }
    if x.is_rational() {
        return Ok(true);
    }
    let n = x.norm().to_integer();
    let t = x.trace().to_integer();
    Ok((&t * &t).is_multiple_of(&n))
}

/// Both real embeddings of `x` are at least `c`.
pub fn is_totally_geq(x: &QuadFieldElement, c: &BigRational) -> bool {
    x.is_totally_geq(c)
}

fn rat_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// All square roots of `beta` inside its quadratic field.
pub fn quad_sqrt(beta: &QuadFieldElement) -> Vec<QuadFieldElement> {
    let d = beta.d();
    let nb = beta.norm();
    let Some(nu_abs) = rat_sqrt(&nb) else { return Vec::new() };
    let mut out: Vec<QuadFieldElement> = Vec::new();
    for nu in [nu_abs.clone(), -nu_abs] {
        // x^2 + d y^2 = A and x^2 - d y^2 = nu
        let x2 = (beta.a() + &nu) / q(2);
        let y2 = (beta.a() - &nu) / q(2 * d);
        let (Some(x), Some(y)) = (rat_sqrt(&x2), rat_sqrt(&y2)) else { continue };
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let cand = QuadFieldElement::new(d, &x * q(sx), &y * q(sy)).unwrap();
            if cand.mul(&cand) == *beta && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// One exponent window of the Q(√5) scan: alpha^2 = 5^j * phi^m for m in [m_lo, m_hi].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanWindow {
    pub norm: i64,
    pub m_lo: i64,
    pub m_hi: i64,
}

fn golden() -> QuadFieldElement {
    QuadFieldElement::from_ints(5, 1, 1, 2)
}

fn golden_pow(m: i64) -> QuadFieldElement {
    let p = golden().pow(m.unsigned_abs() as u32);
    if m >= 0 {
        p
    } else {
        p.inv().expect("unit")
    }
}

/// The exponent windows forced by requiring alpha^2 to have both embeddings in (low^2, high^2).
pub fn q5_scan_windows(norm_base: i64, low: &BigRational, high: &BigRational) -> Vec<ScanWindow> {
    let lo2 = if low.is_positive() { low * low } else { BigRational::zero() };
    let hi2 = high * high;
    let mut out = Vec::new();
    let mut j = 0u32;
    loop {
        let nj = BigRational::from_integer(BigInt::from(norm_base).pow(j));
        if nj >= hi2 {
            break;
        }
        j += 1;
        if nj <= lo2 {
            continue;
        }
        let scaled = |m: i64| golden_pow(m).scale(&nj);
        let fits_hi = |m: i64| scaled(m).cmp_rational(&hi2) != Ordering::Greater;
        let fits_lo = |m: i64| {
            scaled(m).cmp_rational(&lo2) != Ordering::Less && scaled(-m).cmp_rational(&hi2) != Ordering::Greater
        };
        let mut m_hi = 0;
        while fits_hi(m_hi + 1) {
            m_hi += 1;
        }
        let mut m_lo = 0;
        while fits_lo(m_lo - 1) {
            m_lo -= 1;
        }
        out.push(ScanWindow { norm: norm_base.pow(j - 1), m_lo, m_hi });
    }
    out
}
/// d-numbers of Q(√5) whose norm is a power of `norm_base` and whose conjugates lie in (low, high).
pub fn d_numbers_q5_in_window(norm_base: i64, low: &BigRational, high: &BigRational) -> Vec<QuadFieldElement> {
    let mut found: Vec<QuadFieldElement> = Vec::new();
    for w in q5_scan_windows(norm_base, low, high) {
        for m in w.m_lo..=w.m_hi {
            let beta = golden_pow(m).scale(&q(w.norm));
            for alpha in quad_sqrt(&beta) {
                if !alpha.is_integral() || !alpha.embeddings_within(low, high) {
                    continue;
                }
                if alpha.norm() != q(w.norm) {
                    continue;
                }
                if is_d_number(&alpha) == Ok(true) && !found.contains(&alpha) {
                    found.push(alpha);
                }
            }
        }
    }
    found.sort_by(|a, b| a.sub(b).signum());
    found
}

/// Shape of a candidate in the Q(√2) scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sqrt2Form {
    /// 2^a * (1+√2)^b
    Plain,
    /// 2^a * (1+√2)^b * √2
    TimesSqrt2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sqrt2Hit {
    pub a: u32,
    pub b: u32,
    pub form: Sqrt2Form,
    pub alpha: String,
}

/// Summary of the Q(√2) scan, including how many candidates each filter removed.
#[derive(Clone, Debug, Serialize)]
pub struct Sqrt2Scan {
    pub scanned: usize,
    pub totally_geq_two: usize,
    pub hits: Vec<Sqrt2Hit>,
}

/// Candidates alpha totally ≥ 2 with alpha − 1 a d-number; expected to be empty.
pub fn sqrt2_obstruction_scan(a_max: u32, b_max: u32) -> Vec<Sqrt2Hit> {
    sqrt2_obstruction_scan_detailed(a_max, b_max).hits
}

pub fn sqrt2_obstruction_scan_detailed(a_max: u32, b_max: u32) -> Sqrt2Scan {
    let eps = QuadFieldElement::from_ints(2, 1, 1, 1);
    let root2 = QuadFieldElement::from_ints(2, 0, 1, 1);
    let two = q(2);
    let mut scan = Sqrt2Scan { scanned: 0, totally_geq_two: 0, hits: Vec::new() };
    for a in 0..=a_max {
        let p2 = BigRational::from_integer(BigInt::one() << a);
        for b in 1..=b_max {
            let base = eps.pow(b).scale(&p2);
            for (form, alpha) in [(Sqrt2Form::Plain, base.clone()), (Sqrt2Form::TimesSqrt2, base.mul(&root2))] {
                scan.scanned += 1;
                if !alpha.is_totally_geq(&two) {
                    continue;
                }
                scan.totally_geq_two += 1;
                let shifted = alpha.add_rational(&-BigRational::one());
                if shifted.is_zero() {
                    continue;
                }
                if is_d_number(&shifted) == Ok(true) {
                    scan.hits.push(Sqrt2Hit { a, b, form, alpha: alpha.to_string() });
                }
            }
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qe(d: i64, a: i64, b: i64, c: i64) -> QuadFieldElement {
        QuadFieldElement::from_ints(d, a, b, c)
    }

    #[test]
    fn d_number_examples() {
        assert_eq!(is_d_number(&qe(5, 5, 1, 2)), Ok(true));
        assert_eq!(is_d_number(&qe(2, 1, 1, 1)), Ok(true));
        assert_eq!(is_d_number(&qe(5, 3, 1, 1)), Ok(true));
        assert_eq!(is_d_number(&qe(5, 4, 1, 1)), Ok(false));
        assert_eq!(is_d_number(&qe(5, 7, 0, 1)), Ok(true));
        assert!(is_d_number(&qe(5, 1, 0, 2)).is_err());
        assert!(is_d_number(&qe(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn square_roots() {
        let x = qe(5, 5, 1, 2);
        let roots = quad_sqrt(&x.mul(&x));
        assert!(roots.contains(&x));
        assert!(roots.contains(&x.neg()));
        assert!(quad_sqrt(&qe(2, 3, 0, 1)).is_empty());
    }

    #[test]
    fn filtered_before_d_number_test() {
        let scan = sqrt2_obstruction_scan_detailed(1, 2);
        // 2*(1+√2)^2 = 6 + 4√2 has conjugate ≈ 0.34
        assert!(!qe(2, 6, 4, 1).is_totally_geq(&q(2)));
        assert!(scan.hits.is_empty());
    }
}
