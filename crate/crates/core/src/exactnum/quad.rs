//! Real quadratic fields Q(√d) for d in {2, 5}.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyc::CycNumber;
use super::ExactError;

pub const SUPPORTED_D: [i64; 2] = [2, 5];

/// a + b√d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    d: i64,
    a: BigRational,
    b: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn is_int(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// Sign of u + v√d for the positive square root, exactly.
fn sign_of(u: &BigRational, v: &BigRational, d: i64) -> Ordering {
    let su = u.cmp(&BigRational::zero());
    let sv = v.cmp(&BigRational::zero());
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // opposite signs: compare u^2 with d v^2
    let lhs = u * u;
    let rhs = v * v * q(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadFieldElement {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> Result<Self, ExactError> {
        if !SUPPORTED_D.contains(&d) {
            return Err(ExactError::UnsupportedField(d));
        }
        Ok(QuadFieldElement { d, a, b })
    }

    /// (a + b√d) / c with integer inputs.
    pub fn from_ints(d: i64, a: i64, b: i64, c: i64) -> Self {
        Self::new(d, BigRational::new(a.into(), c.into()), BigRational::new(b.into(), c.into())).expect("supported field")
    }

    pub fn rational(d: i64, a: BigRational) -> Self {
        Self::new(d, a, BigRational::zero()).expect("supported field")
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * q(self.d)
    }

    pub fn trace(&self) -> BigRational {
        &self.a * q(2)
    }

    /// Algebraic integrality. For d ≡ 1 mod 4 half-integers with a − b ∈ Z are allowed.
    pub fn is_integral(&self) -> bool {
        if self.d % 4 == 1 {
            let two_a = &self.a * q(2);
            let two_b = &self.b * q(2);
            is_int(&two_a) && is_int(&two_b) && is_int(&(&self.a - &self.b))
        } else {
            is_int(&self.a) && is_int(&self.b)
        }
    }

    pub fn conj(&self) -> Self {
        QuadFieldElement { d: self.d, a: self.a.clone(), b: -self.b.clone() }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing different quadratic fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        QuadFieldElement { d: self.d, a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        QuadFieldElement { d: self.d, a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> Self {
        QuadFieldElement { d: self.d, a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d = q(self.d);
        QuadFieldElement {
            d: self.d,
            a: &self.a * &other.a + &self.b * &other.b * d,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn add_rational(&self, c: &BigRational) -> Self {
        QuadFieldElement { d: self.d, a: &self.a + c, b: self.b.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QuadFieldElement { d: self.d, a: &self.a * c, b: &self.b * c }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::rational(self.d, BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sign of the value under the embedding √d > 0.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b, self.d)
    }

    /// Compare the value under the embedding √d > 0 with a rational.
    pub fn cmp_rational(&self, c: &BigRational) -> Ordering {
        sign_of(&(&self.a - c), &self.b, self.d)
    }

    /// Both real embeddings are ≥ c.
    pub fn is_totally_geq(&self, c: &BigRational) -> bool {
        self.cmp_rational(c) != Ordering::Less && self.conj().cmp_rational(c) != Ordering::Less
    }

    /// Both real embeddings are > c.
    pub fn is_totally_gt(&self, c: &BigRational) -> bool {
        self.cmp_rational(c) == Ordering::Greater && self.conj().cmp_rational(c) == Ordering::Greater
    }

    /// Both embeddings lie strictly between `lo` and `hi`.
    pub fn embeddings_within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        self.is_totally_gt(lo) && self.neg().is_totally_gt(&-hi.clone())
    }

    /// Floating-point values of (identity, conjugate) embeddings.
    pub fn embeddings_f64(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let r = (self.d as f64).sqrt();
        (a + b * r, a - b * r)
    }

    /// √d as a cyclotomic number (positive under the identity embedding).
    pub fn sqrt_d_cyc(d: i64) -> Result<CycNumber, ExactError> {
        match d {
            2 => Ok(&CycNumber::zeta(8, 1) - &CycNumber::zeta(8, 3)),
            5 => {
                let z = |k| CycNumber::zeta(5, k);
                Ok(&(&z(1) + &z(4)) - &(&z(2) + &z(3)))
            }
            _ => Err(ExactError::UnsupportedField(d)),
        }
    }

    pub fn to_cyc(&self) -> CycNumber {
        let r = Self::sqrt_d_cyc(self.d).expect("supported field");
        &CycNumber::from_rational(&self.a) + &r.scale(&self.b)
    }

    /// Recognise a cyclotomic number lying in Q(√d).
    pub fn from_cyc(x: &CycNumber, d: i64) -> Option<Self> {
        if let Some(r) = x.to_rational() {
            return Self::new(d, r, BigRational::zero()).ok();
        }
        let r = Self::sqrt_d_cyc(d).ok()?;
        let cond = r.conductor();
        if cond % x.conductor() != 0 {
            return None;
        }
        let k = (2..cond)
            .find(|&k| num_integer::Integer::gcd(&k, &cond) == 1 && r.galois(k as i64).ok() == Some(r.neg_ref()))?;
        let sx = x.galois(k as i64).ok()?;
        let a = x.add_ref(&sx).to_rational()? / q(2);
        let b = x.sub_ref(&CycNumber::from_rational(&a)).mul_ref(&r).to_rational()? / q(d);
        let cand = Self::new(d, a, b).ok()?;
        if cand.to_cyc() == *x {
            Some(cand)
        } else {
            None
        }
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let den = num_integer::Integer::lcm(self.a.denom(), self.b.denom());
        let a = self.a.numer() * (&den / self.a.denom());
        let b = self.b.numer() * (&den / self.b.denom());
        let sign = if b.is_negative() { "-" } else { "+" };
        let mag = b.abs();
        let rad = if mag.is_one() { format!("√{}", self.d) } else { format!("{mag}√{}", self.d) };
        let body = if a.is_zero() {
            if b.is_negative() {
                format!("-{rad}")
            } else {
                rad
            }
        } else {
            format!("{a} {sign} {rad}")
        };
        if den.is_one() {
            write!(f, "{body}")
        } else if a.is_zero() {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl fmt::Debug for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        q(n)
    }

    #[test]
    fn norm_trace() {
        let x = QuadFieldElement::from_ints(5, 5, 1, 2);
        assert_eq!(x.norm(), r(5));
        assert_eq!(x.trace(), r(5));
        assert!(x.is_integral());
        assert!(!QuadFieldElement::from_ints(5, 1, 0, 2).is_integral());
        assert!(!QuadFieldElement::from_ints(2, 1, 1, 2).is_integral());
    }

    #[test]
    fn totally_geq() {
        assert!(QuadFieldElement::from_ints(2, 3, 1, 1).is_totally_geq(&r(1)));
        assert!(!QuadFieldElement::from_ints(2, 1, 1, 1).is_totally_geq(&r(1)));
        assert!(QuadFieldElement::from_ints(5, 5, 0, 1).is_totally_geq(&r(5)));
    }

    #[test]
    fn cyc_roundtrip() {
        for (d, a, b, c) in [(5, 5, -1, 2), (2, 3, 2, 1), (5, 1, 1, 2), (2, 0, 1, 3)] {
            let x = QuadFieldElement::from_ints(d, a, b, c);
            let y = x.to_cyc();
            assert_eq!(QuadFieldElement::from_cyc(&y, d), Some(x));
        }
        assert_eq!(QuadFieldElement::from_cyc(&CycNumber::zeta(4, 1), 2), None);
    }

    #[test]
    fn display() {
        assert_eq!(QuadFieldElement::from_ints(5, 5, -1, 2).to_string(), "(5 - √5)/2");
        assert_eq!(QuadFieldElement::from_ints(2, 1, 1, 1).to_string(), "1 + √2");
    }
}
