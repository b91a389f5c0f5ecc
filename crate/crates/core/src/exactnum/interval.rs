//! Certified rational enclosures for real parts of cyclotomic numbers.
//!
//! Bounds for π come from Machin's formula, cosines from a Taylor polynomial with
//! an explicit remainder bound. All intermediate values are rounded outward to
//! dyadic rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyc::CycNumber;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    let scaled = x * BigRational::from_integer(s.clone());
    BigRational::new(scaled.numer().div_floor(scaled.denom()), s)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    let scaled = x * BigRational::from_integer(s.clone());
    let f = scaled.numer().div_floor(scaled.denom());
    let c = if BigRational::from_integer(f.clone()) == scaled { f } else { f + 1 };
    BigRational::new(c, s)
}

/// Enclosure of atan(1/x) for integer x ≥ 2.
fn atan_inv(x: i64, bits: u32) -> (BigRational, BigRational) {
    let xx = q(x * x);
    let mut term = q(x).recip();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    loop {
        let t = &term / q(2 * k + 1);
        if k % 2 == 0 {
            sum += &t;
        } else {
            sum -= &t;
        }
        term = round_down(&(&term / &xx), bits + 16);
        k += 1;
        let next = &term / q(2 * k + 1);
        if next < eps {
            // alternating series with decreasing terms: the true value lies
            // between the partial sum and the partial sum plus the next term
            let other = if k % 2 == 0 { &sum + &next } else { &sum - &next };
            let slack = BigRational::new(BigInt::from(k + 1), pow2(bits + 16));
            let (lo, hi) = if sum < other { (sum.clone(), other) } else { (other, sum.clone()) };
            return (round_down(&(lo - &slack), bits + 8), round_up(&(hi + slack), bits + 8));
        }
    }
}

/// Rational enclosure of π of width about 2^-bits.
pub fn pi_interval(bits: u32) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = atan_inv(5, bits + 8);
    let (b_lo, b_hi) = atan_inv(239, bits + 8);
    let lo = &a_lo * q(16) - &b_hi * q(4);
    let hi = &a_hi * q(16) - &b_lo * q(4);
    (round_down(&lo, bits + 4), round_up(&hi, bits + 4))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// cos at a point given in fixed point (x = m/2^p), evaluated in fixed point.
/// Returns the value and an error bound, both as rationals.
fn cos_taylor(x: &BigInt, p: u32, terms: u32) -> (BigRational, BigRational) {
    let x2 = (x * x) >> p;
    let mut sum = BigInt::zero();
    let mut pw = BigInt::one() << p;
    let mut fact = BigInt::one();
    for k in 0..terms {
        if k > 0 {
            fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
        }
        let t = &pw / &fact;
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pw = (&pw * &x2) >> p;
    }
    let scale = BigRational::from_integer(pow2(p));
    // truncation with |x| ≤ π < 4; each rounding is one unit in the last place,
    // amplified at most by x² < 10 per step before division by (2k)!
    let trunc = BigRational::new(pow2(4 * terms), factorial(2 * terms));
    let ulps = BigRational::from_integer(BigInt::from(64 * (terms + 1)));
    (BigRational::from_integer(sum) / &scale, trunc + ulps / scale)
}

/// Enclosure of cos(2π r) for a rational number of turns r.
pub fn cos_turns(r: &BigRational, bits: u32) -> (BigRational, BigRational) {
    cos_turns_with_pi(r, bits, &pi_interval(bits + 8))
}

fn cos_turns_with_pi(r: &BigRational, bits: u32, pi: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    // reduce to r in [0, 1/2] using periodicity and symmetry
    let frac = r - BigRational::from_integer(r.numer().div_floor(r.denom()));
    let half = BigRational::new(1.into(), 2.into());
    let r0 = if frac > half { BigRational::one() - frac } else { frac };
    if r0.is_zero() {
        return (BigRational::one(), BigRational::one());
    }
    if r0 == half {
        return (q(-1), q(-1));
    }
    if r0 == BigRational::new(1.into(), 4.into()) {
        return (BigRational::zero(), BigRational::zero());
    }
    let (p_lo, p_hi) = pi;
    let x_lo = p_lo * q(2) * &r0;
    let x_hi = p_hi * q(2) * &r0;
    let terms = 12 + bits / 3;
    let p = bits + 40;
    let fixed = |v: &BigRational, up: bool| {
        let scaled = v * BigRational::from_integer(pow2(p));
        let f = scaled.numer().div_floor(scaled.denom());
        if up && BigRational::from_integer(f.clone()) != scaled {
            f + 1
        } else {
            f
        }
    };
    // cos is decreasing on [0, π]
    let (v_hi, e1) = cos_taylor(&fixed(&x_lo, false), p, terms);
    let (v_lo, e2) = cos_taylor(&fixed(&x_hi, true), p, terms);
    (round_down(&(v_lo - e2), bits + 4), round_up(&(v_hi + e1), bits + 4))
}

impl CycNumber {
    /// Rational enclosure of the real part under zeta_n ↦ exp(2πi/n).
    pub fn real_interval(&self, bits: u32) -> (BigRational, BigRational) {
        let n = self.conductor();
        let den = BigRational::from_integer(self.denominator().clone());
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let pi = pi_interval(bits + 16);
        for (e, c) in self.numerators().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cl, ch) = cos_turns_with_pi(&BigRational::new(BigInt::from(e as u64), BigInt::from(n)), bits + 8, &pi);
            let cc = BigRational::from_integer(c.clone());
            if c.is_positive() {
                lo += &cc * cl;
                hi += &cc * ch;
            } else {
                lo += &cc * ch;
                hi += &cc * cl;
            }
        }
        (lo / &den, hi / &den)
    }

    /// Exact sign of the real part under the identity embedding.
    pub fn real_sign(&self) -> Ordering {
        let re = if self.is_real() { self.clone() } else { (self + &self.conj()).scale(&BigRational::new(1.into(), 2.into())) };
        if re.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 48;
        loop {
            let (lo, hi) = re.real_interval(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits < 1 << 16, "sign refinement did not terminate");
        }
    }

    /// Exact comparison of real parts under the identity embedding.
    pub fn real_cmp(&self, other: &CycNumber) -> Ordering {
        (self - other).real_sign()
    }

    /// Exact comparison of the real part with a rational.
    pub fn real_cmp_rational(&self, c: &BigRational) -> Ordering {
        (self - &CycNumber::from_rational(c)).real_sign()
    }

    /// Every real embedding of a totally real number is ≥ c (checked on all Galois conjugates).
    pub fn is_totally_geq(&self, c: &BigRational) -> bool {
        let n = self.conductor();
        super::arith::units_mod(n)
            .into_iter()
            .all(|k| self.galois(k as i64).expect("unit").real_cmp_rational(c) != Ordering::Less)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pi_is_enclosed() {
        let (lo, hi) = pi_interval(80);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI);
        assert!((&hi - &lo) < BigRational::new(1.into(), pow2(70)));
        assert!(lo < hi);
    }

    #[test]
    fn cos_values() {
        for (k, n) in [(1, 8), (1, 12), (1, 5), (2, 7), (3, 16), (5, 12)] {
            let (lo, hi) = cos_turns(&BigRational::new(BigInt::from(k), BigInt::from(n)), 64);
            let v = (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
            assert!(lo.to_f64().unwrap() <= v + 1e-15 && hi.to_f64().unwrap() >= v - 1e-15, "{k}/{n}");
            assert!((hi - lo).to_f64().unwrap() < 1e-15);
        }
    }

    #[test]
    fn signs() {
        let s2 = &CycNumber::zeta(8, 1) - &CycNumber::zeta(8, 3);
        assert_eq!(s2.real_sign(), Ordering::Greater);
        assert_eq!((&s2 - &CycNumber::from_frac(141422, 100000)).real_sign(), Ordering::Less);
        assert_eq!((&s2 - &CycNumber::from_frac(141421, 100000)).real_sign(), Ordering::Greater);
        assert_eq!(CycNumber::zeta(4, 1).real_sign(), Ordering::Equal);
        let two_cos = &CycNumber::zeta(12, 1) + &CycNumber::zeta(12, 11);
        assert!(!two_cos.is_totally_geq(&BigRational::zero()));
    }
}
