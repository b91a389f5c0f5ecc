//! Exact elements of cyclotomic fields in the canonical power basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{canonical_conductor, gcd_u64, lcm_u64, prime_factors, rem_i64, totient};
use super::cyclo::{cyclo, try_descend};
use super::root::RootOfUnity;
use super::ExactError;

/// An element of Q(zeta_n) stored as `num / den` over the power basis of the
/// minimal field containing it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

pub(crate) fn mul_raw(n: u64, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let c = cyclo(n);
    let phi = c.phi;
    let mut conv = vec![BigInt::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                conv[i + j] += x * y;
            }
        }
    }
    let mut out = vec![BigInt::zero(); phi];
    for (e, t) in conv.into_iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        if e < phi {
            out[e] += t;
        } else {
            for &(i, r) in c.sparse_row(e) {
                out[i] += &t * r;
            }
        }
    }
    out
}

/// Re-express numerators from Q(zeta_from) inside Q(zeta_to), `from | to`.
pub(crate) fn lift_raw(num: &[BigInt], from: u64, to: u64) -> Vec<BigInt> {
    if from == to {
        return num.to_vec();
    }
    let c = cyclo(to);
    let step = (to / from) as usize;
    let mut out = vec![BigInt::zero(); c.phi];
    for (e, x) in num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(i, r) in c.sparse_row(e * step) {
            out[i] += x * r;
        }
    }
    out
}

fn galois_raw(num: &[BigInt], n: u64, k: u64) -> Vec<BigInt> {
    let c = cyclo(n);
    let mut out = vec![BigInt::zero(); c.phi];
    for (e, x) in num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let target = ((e as u64 * k) % n) as usize;
        for &(i, r) in c.sparse_row(target) {
            out[i] += x * r;
        }
    }
    out
}

/// Q(zeta_{2h}) = Q(zeta_h) for odd h, using zeta_{2h} = -zeta_h^((h+1)/2).
fn halve_raw(num: &[BigInt], h: u64) -> Vec<BigInt> {
    let c = cyclo(h);
    let mut out = vec![BigInt::zero(); c.phi];
    let half = (h + 1) / 2;
    for (e, x) in num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let sign = if e % 2 == 0 { 1 } else { -1 };
        let target = ((e as u64 * half) % h) as usize;
        for &(i, r) in c.sparse_row(target) {
            out[i] += x * (r * sign);
        }
    }
    out
}

/// One descent step from Q(zeta_n) to a maximal proper subfield through prime `p`.
fn descend_once(n: u64, p: u64, num: &[BigInt]) -> Option<(u64, Vec<BigInt>, BigInt)> {
    let m = n / p;
    if m % p == 0 {
        // Phi_n(x) = Phi_m(x^p): the subfield is spanned by exponents divisible by p.
        let pn = num.len();
        if (0..pn).any(|e| e % p as usize != 0 && !num[e].is_zero()) {
            return None;
        }
        let coords: Vec<BigInt> = (0..pn / p as usize).map(|i| num[i * p as usize].clone()).collect();
        if m % 4 == 2 {
            return Some((m / 2, halve_raw(&coords, m / 2), BigInt::one()));
        }
        return Some((m, coords, BigInt::one()));
    }
    let target = canonical_conductor(m);
    try_descend(n, target, num).map(|(c, d)| (target, c, d))
}

impl CycNumber {
    fn from_raw(n: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycNumber { n, num, den };
        x.normalize();
        x.reduce_conductor();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.n = 1;
            self.num = vec![BigInt::zero()];
            self.den = BigInt::one();
        }
    }

    fn reduce_conductor(&mut self) {
        if self.n % 4 == 2 {
            self.num = halve_raw(&self.num, self.n / 2);
            self.n /= 2;
        }
        'outer: loop {
            if self.n == 1 {
                return;
            }
            for p in prime_factors(self.n) {
                if let Some((m, coords, extra)) = descend_once(self.n, p, &self.num) {
                    self.n = m;
                    self.num = coords;
                    self.den = &self.den * extra;
                    self.normalize();
                    continue 'outer;
                }
            }
            return;
        }
    }

    pub fn zero() -> Self {
        CycNumber { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycNumber { n: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        CycNumber { n: 1, num: vec![v], den: BigInt::one() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_raw(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_raw(1, vec![BigInt::from(p)], BigInt::from(q))
    }

    /// zeta_n^k.
    pub fn zeta(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let c = cyclo(n);
        let row = c.row(rem_i64(k, n) as usize);
        Self::from_raw(n, row.iter().map(|&v| BigInt::from(v)).collect(), BigInt::one())
    }

    pub fn from_root(r: &RootOfUnity) -> Self {
        Self::zeta(r.denom(), r.numer() as i64)
    }

    /// Build from power-basis numerators over a common denominator in Q(zeta_n).
    pub fn from_parts(n: u64, num: Vec<BigInt>, den: BigInt) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(ExactError::Malformed("conductor must be positive".into()));
        }
        let phi = totient(n) as usize;
        if num.len() != phi {
            return Err(ExactError::Malformed(format!(
                "expected {phi} coefficients for conductor {n}, got {}",
                num.len()
            )));
        }
        if den.is_zero() {
            return Err(ExactError::Malformed("zero denominator".into()));
        }
        Ok(Self::from_raw(n, num, den))
    }

    /// Power-basis coefficients as rationals.
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Result<Self, ExactError> {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(n, num, den)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.num[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.n == 1 {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.n == 1 && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// Numerators lifted into Q(zeta_m); `m` must be a multiple of the conductor.
    pub fn numerators_in(&self, m: u64) -> Vec<BigInt> {
        assert!(m % self.n == 0, "conductor {} does not divide {m}", self.n);
        lift_raw(&self.num, self.n, m)
    }

    /// Coefficients of the element viewed in Q(zeta_m).
    pub fn coeffs_in(&self, m: u64) -> Vec<BigRational> {
        self.numerators_in(m).into_iter().map(|c| BigRational::new(c, self.den.clone())).collect()
    }

    /// True when every power-basis coefficient (at the minimal conductor) is integral.
    pub fn has_integral_coeffs(&self) -> bool {
        self.den.is_one()
    }

    /// The automorphism zeta ↦ zeta^k.
    pub fn galois(&self, k: i64) -> Result<Self, ExactError> {
        let kk = rem_i64(k, self.n.max(1));
        if self.n > 1 && gcd_u64(kk, self.n) != 1 {
            return Err(ExactError::NotCoprime { k, n: self.n });
        }
        if self.n == 1 {
            return Ok(self.clone());
        }
        Ok(CycNumber { n: self.n, num: galois_raw(&self.num, self.n, kk), den: self.den.clone() })
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        CycNumber { n: self.n, num: galois_raw(&self.num, self.n, self.n - 1), den: self.den.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn binary(&self, other: &Self, op: impl Fn(u64, &[BigInt], &BigInt, &[BigInt], &BigInt) -> (Vec<BigInt>, BigInt)) -> Self {
        let m = lcm_u64(self.n, other.n);
        let a = lift_raw(&self.num, self.n, m);
        let b = lift_raw(&other.num, other.n, m);
        let (num, den) = op(m, &a, &self.den, &b, &other.den);
        Self::from_raw(m, num, den)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.binary(other, |_, a, da, b, db| {
            let num = a.iter().zip(b).map(|(x, y)| x * db + y * da).collect();
            (num, da * db)
        })
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        CycNumber { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.n == 1 && other.n == 1 {
            return Self::from_raw(1, vec![&self.num[0] * &other.num[0]], &self.den * &other.den);
        }
        self.binary(other, |m, a, da, b, db| (mul_raw(m, a, b), da * db))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_raw(self.n, num, &self.den * q.denom())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Field norm down to Q, computed in the minimal field.
    pub fn norm(&self) -> BigRational {
        if self.n == 1 {
            return self.to_rational().unwrap();
        }
        let (prod, _) = self.conjugate_product();
        let full = prod.mul_ref(self);
        full.to_rational().expect("norm must be rational")
    }

    fn conjugate_product(&self) -> (Self, u64) {
        let mut acc = CycNumber::one();
        let mut count = 0;
        for k in 2..self.n {
            if gcd_u64(k, self.n) == 1 {
                acc = acc.mul_ref(&self.galois(k as i64).unwrap());
                count += 1;
            }
        }
        (acc, count)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(Self::from_raw(1, vec![self.den.clone()], self.num[0].clone()));
        }
        let (prod, _) = self.conjugate_product();
        let nrm = prod.mul_ref(self).to_rational().expect("norm must be rational");
        Ok(prod.scale(&nrm.recip()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Value under the embedding zeta_n ↦ exp(2πi/n), as (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / d;
            let ang = 2.0 * std::f64::consts::PI * e as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// If the element is a root of unity, return it.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() || !self.mul_ref(&self.conj()).is_one() {
            return None;
        }
        let m = if self.n % 2 == 1 { 2 * self.n } else { self.n };
        (0..m)
            .map(|k| RootOfUnity::new(k as i64, m))
            .find(|r| CycNumber::from_root(r) == *self)
    }

    /// Positive square root of a nonnegative rational perfect square.
    pub fn rational_sqrt(&self) -> Option<BigRational> {
        let q = self.to_rational()?;
        if q.is_negative() {
            return None;
        }
        let n = q.numer().sqrt();
        let d = q.denom().sqrt();
        if &n * &n == *q.numer() && &d * &d == *q.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    /// Sum of a slice.
    pub fn sum<'a, I: IntoIterator<Item = &'a CycNumber>>(items: I) -> Self {
        let mut acc = CycNumber::zero();
        for x in items {
            acc = acc.add_ref(x);
        }
        acc
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<&RootOfUnity> for CycNumber {
    fn from(r: &RootOfUnity) -> Self {
        Self::from_root(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                self.$inner(rhs)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                self.$inner(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            if self.den.is_one() {
                return write!(f, "{}", self.num[0]);
            }
            return write!(f, "{}/{}", self.num[0], self.den);
        }
        let mut body = String::new();
        let mut count = 0;
        for (e, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if count == 0 {
                if c.is_negative() {
                    body.push('-');
                }
            } else {
                body.push_str(&format!(" {sign} "));
            }
            let term = match e {
                0 => format!("{mag}"),
                1 if mag.is_one() => format!("z{}", self.n),
                1 => format!("{mag}*z{}", self.n),
                _ if mag.is_one() => format!("z{}^{e}", self.n),
                _ => format!("{mag}*z{}^{e}", self.n),
            };
            body.push_str(&term);
            count += 1;
        }
        if self.den.is_one() {
            write!(f, "{body}")
        } else if count == 1 {
            write!(f, "{body}/{}", self.den)
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

/// JSON integer that falls back to a decimal string outside the i64 range.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => JsonInt::Small(s),
            None => JsonInt::Big(v.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    n: u64,
    num: Vec<JsonInt>,
    den: JsonInt,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycJson {
            n: self.n,
            num: self.num.iter().map(JsonInt::from_big).collect(),
            den: JsonInt::from_big(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        let num = raw.num.iter().map(|v| v.to_big()).collect::<Result<Vec<_>, _>>().map_err(serde::de::Error::custom)?;
        let den = raw.den.to_big().map_err(serde::de::Error::custom)?;
        CycNumber::from_parts(raw.n, num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycNumber {
        CycNumber::zeta(n, k)
    }

    #[test]
    fn roots_reduce() {
        assert_eq!(z(4, 2), CycNumber::from_int(-1));
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(15, 3), z(5, 1));
    }

    #[test]
    fn sum_of_roots_is_zero() {
        let s = CycNumber::sum(&(0..5).map(|k| z(5, k)).collect::<Vec<_>>());
        assert!(s.is_zero());
        let s = CycNumber::sum(&(0..12).map(|k| z(12, k)).collect::<Vec<_>>());
        assert!(s.is_zero());
    }

    #[test]
    fn sqrt5_gauss_sum() {
        let r5 = &(&z(5, 1) + &z(5, 4)) - &(&z(5, 2) + &z(5, 3));
        assert_eq!(&r5 * &r5, CycNumber::from_int(5));
        assert_eq!(r5.galois(2).unwrap(), -&r5);
        assert!(r5.to_complex().0 > 0.0);
    }

    #[test]
    fn descent_through_squarefree_part() {
        // zeta_15 + zeta_15^4 + zeta_15^7 + ... fixed sums land in smaller fields
        let x = &z(15, 5) + &z(15, 10);
        assert_eq!(x, CycNumber::from_int(-1));
        let y = &z(20, 4) * &z(20, 5);
        assert_eq!(y, z(20, 9));
        assert_eq!(y.conductor(), 20);
        let w = &z(12, 1) + &z(12, 11);
        assert_eq!(&w * &w, CycNumber::from_int(3));
        assert_eq!(w.conductor(), 12);
    }

    #[test]
    fn inverse() {
        let x = &CycNumber::from_int(2) + &z(7, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycNumber::zero().inv().is_err());
    }

    #[test]
    fn galois_rejects_noncoprime() {
        assert!(z(6, 1).galois(3).is_err());
        assert!(z(8, 1).galois(2).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = (&z(8, 1) - &z(8, 3)).scale(&BigRational::new(3.into(), 2.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":8,"num":[0,3,0,-3],"den":2}"#);
        let y: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y).unwrap(), s);
    }

    #[test]
    fn root_detection() {
        assert_eq!(z(6, 1).as_root_of_unity(), Some(RootOfUnity::new(1, 6)));
        assert_eq!(CycNumber::from_int(-1).as_root_of_unity(), Some(RootOfUnity::new(1, 2)));
        assert_eq!(CycNumber::from_int(2).as_root_of_unity(), None);
    }
}
