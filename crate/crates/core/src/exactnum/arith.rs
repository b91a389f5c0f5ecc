//! Small integer helpers shared by the exact arithmetic modules.

use num_integer::Integer;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a.lcm(&b)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn totient(n: u64) -> u64 {
    let mut r = n;
    for p in prime_factors(n) {
        r = r / p * (p - 1);
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| gcd_u64(*k, n) == 1).collect()
}

/// The canonical conductor of the field Q(zeta_n): never 2 mod 4.
pub fn canonical_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn modpow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// The integer square root of `n` when `n` is a perfect square.
pub fn isqrt_exact(n: u64) -> Option<u64> {
    let r = num_integer::Roots::sqrt(&n);
    (r * r == n).then_some(r)
}

pub fn rem_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        let expect = [(1, 1), (2, 1), (4, 2), (5, 4), (8, 4), (12, 4), (15, 8), (60, 16), (64, 32)];
        for (n, p) in expect {
            assert_eq!(totient(n), p, "phi({n})");
        }
    }

    #[test]
    fn conductors() {
        assert_eq!(canonical_conductor(6), 3);
        assert_eq!(canonical_conductor(2), 1);
        assert_eq!(canonical_conductor(12), 12);
    }
}
