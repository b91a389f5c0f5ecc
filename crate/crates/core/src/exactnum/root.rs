//! Roots of unity as reduced fractions k/m.

use std::fmt;
use std::str::FromStr;

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize};

use super::arith::{gcd_u64, lcm_u64, rem_i64};
use super::ExactError;

/// exp(2πi k/m) with 0 <= k < m and gcd(k, m) = 1 (1 is 0/1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    k: u64,
    m: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, m: u64) -> Self {
        assert!(m >= 1, "root of unity denominator must be positive");
        let k = rem_i64(k, m);
        let g = gcd_u64(k, m);
        if k == 0 {
            return RootOfUnity { k: 0, m: 1 };
        }
        RootOfUnity { k: k / g, m: m / g }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, m: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, m: 2 }
    }

    pub fn numer(&self) -> u64 {
        self.k
    }

    pub fn denom(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm_u64(self.m, other.m);
        let k = self.k * (m / self.m) + other.k * (m / other.m);
        Self::new((k % m) as i64, m)
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.k as i64), self.m)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.k as i128 * e as i128).rem_euclid(self.m as i128);
        Self::new(k as i64, self.m)
    }

    /// The Galois image zeta ↦ zeta^a applied to this root.
    pub fn galois(&self, a: i64) -> Self {
        self.pow(a)
    }

    /// Exponent of this root as a power of zeta_n; `n` must be a multiple of the order.
    pub fn exponent_in(&self, n: u64) -> u64 {
        assert!(n % self.m == 0, "order {} does not divide {n}", self.m);
        self.k * (n / self.m)
    }

    /// Angle as a fraction of a full turn, in [0, 1).
    pub fn turns(&self) -> f64 {
        self.k as f64 / self.m as f64
    }

    /// Principal cube roots ordered by argument in [0, 2π).
    pub fn cube_roots(&self) -> [Self; 3] {
        let m = 3 * self.m;
        [0, 1, 2].map(|j| Self::new((self.k + j * self.m) as i64, m))
    }

    /// The cube root of minimal argument.
    pub fn min_cube_root(&self) -> Self {
        self.cube_roots()[0]
    }
}

/// Ordered by argument in [0, 2π).
impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k as u128 * other.m as u128).cmp(&(other.k as u128 * self.m as u128))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: i64,
            m: u64,
        }
        let raw = Raw::deserialize(d)?;
        if raw.m == 0 {
            return Err(serde::de::Error::custom("root of unity with m = 0"));
        }
        Ok(RootOfUnity::new(raw.k, raw.m))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.m) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, m) => write!(f, "z{m}"),
            (k, m) => write!(f, "z{m}^{k}"),
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RootOfUnity {
    type Err = ExactError;

    /// Accepts `1`, `-1`, `i`, `-i`, `zN`, `zN^k`, `-zN^k` and `k/m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ExactError::Parse(format!("bad root-of-unity token {s:?}"));
        match t {
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::minus_one()),
            "i" => return Ok(Self::new(1, 4)),
            "-i" => return Ok(Self::new(3, 4)),
            _ => {}
        }
        if let Some((k, m)) = t.split_once('/') {
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let m: u64 = m.trim().parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            return Ok(Self::new(k, m));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let body = body.strip_prefix('z').ok_or_else(bad)?;
        let (m, k) = match body.split_once('^') {
            Some((m, k)) => (m.parse::<u64>().map_err(|_| bad())?, k.parse::<i64>().map_err(|_| bad())?),
            None => (body.parse::<u64>().map_err(|_| bad())?, 1),
        };
        if m == 0 {
            return Err(bad());
        }
        let r = Self::new(k, m);
        Ok(if neg { r.mul(&Self::minus_one()) } else { r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_multiply() {
        assert_eq!(RootOfUnity::new(2, 8), RootOfUnity::new(1, 4));
        assert_eq!(RootOfUnity::new(8, 8), RootOfUnity::one());
        let a = RootOfUnity::new(1, 4);
        assert_eq!(a.mul(&a), RootOfUnity::minus_one());
        assert_eq!(a.inv(), RootOfUnity::new(3, 4));
        assert_eq!(RootOfUnity::new(1, 3).mul(&RootOfUnity::new(1, 4)).order(), 12);
    }

    #[test]
    fn parse_tokens() {
        let p = |s: &str| s.parse::<RootOfUnity>().unwrap();
        assert_eq!(p("i"), RootOfUnity::new(1, 4));
        assert_eq!(p("-i"), RootOfUnity::new(3, 4));
        assert_eq!(p("z8^3"), RootOfUnity::new(3, 8));
        assert_eq!(p("z8"), RootOfUnity::new(1, 8));
        assert_eq!(p("-z8"), RootOfUnity::new(5, 8));
        assert_eq!(p("3/12"), RootOfUnity::new(1, 4));
        assert!("z0".parse::<RootOfUnity>().is_err());
        assert!("q".parse::<RootOfUnity>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for m in 1..20u64 {
            for k in 0..m {
                let r = RootOfUnity::new(k as i64, m);
                assert_eq!(r.to_string().parse::<RootOfUnity>().unwrap(), r);
            }
        }
    }

    #[test]
    fn order_and_json() {
        let mut v = vec![RootOfUnity::new(3, 4), RootOfUnity::one(), RootOfUnity::new(1, 8), RootOfUnity::new(1, 2)];
        v.sort();
        assert_eq!(v, vec![RootOfUnity::one(), RootOfUnity::new(1, 8), RootOfUnity::new(1, 2), RootOfUnity::new(3, 4)]);
        let r: RootOfUnity = serde_json::from_str(r#"{"k":6,"m":8}"#).unwrap();
        assert_eq!(r, RootOfUnity::new(3, 4));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"k":3,"m":4}"#);
        assert!(serde_json::from_str::<RootOfUnity>(r#"{"k":1,"m":0}"#).is_err());
    }

    #[test]
    fn cube_roots() {
        let xi = RootOfUnity::new(5, 8);
        for g in xi.cube_roots() {
            assert_eq!(g.pow(3), xi);
        }
        assert_eq!(xi.min_cube_root(), RootOfUnity::new(5, 24));
    }
}
