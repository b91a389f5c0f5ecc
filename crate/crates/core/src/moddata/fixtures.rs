//! Named fixtures: printed matrices transcribed verbatim, and small parametric families.
//!
//! Table tokens are integers, `i` for zeta_4 and `-i` for zeta_4^3.

use super::{ModDataError, ModularData};
use crate::exactnum::arith::gcd_u64;
use crate::exactnum::{CycNumber, RootOfUnity};

const RANK22_S: &str = "
     1  1  1  1  1  1  1  1  2  2  2  2  2  2  2  2  2  2  2  2  2  2
     1  1  1  1  1  1  1  1 -2 -2  2  2  2  2 -2 -2 -2 -2  2  2 -2 -2
     1  1  1  1  1  1  1  1  2  2 -2 -2  2  2 -2 -2  2  2 -2 -2 -2 -2
     1  1  1  1  1  1  1  1 -2 -2 -2 -2  2  2  2  2 -2 -2 -2 -2  2  2
     1  1  1  1  1  1  1  1  2  2  2  2 -2 -2  2  2 -2 -2 -2 -2 -2 -2
     1  1  1  1  1  1  1  1 -2 -2  2  2 -2 -2 -2 -2  2  2 -2 -2  2  2
     1  1  1  1  1  1  1  1  2  2 -2 -2 -2 -2 -2 -2 -2 -2  2  2  2  2
     1  1  1  1  1  1  1  1 -2 -2 -2 -2 -2 -2  2  2  2  2  2  2 -2 -2
     2 -2  2 -2  2 -2  2 -2 -4  4  0  0  0  0  0  0  0  0  0  0  0  0
     2 -2  2 -2  2 -2  2 -2  4 -4  0  0  0  0  0  0  0  0  0  0  0  0
     2  2 -2 -2  2  2 -2 -2  0  0 -4  4  0  0  0  0  0  0  0  0  0  0
     2  2 -2 -2  2  2 -2 -2  0  0  4 -4  0  0  0  0  0  0  0  0  0  0
     2  2  2  2 -2 -2 -2 -2  0  0  0  0 -4  4  0  0  0  0  0  0  0  0
     2  2  2  2 -2 -2 -2 -2  0  0  0  0  4 -4  0  0  0  0  0  0  0  0
     2 -2 -2  2  2 -2 -2  2  0  0  0  0  0  0 -4  4  0  0  0  0  0  0
     2 -2 -2  2  2 -2 -2  2  0  0  0  0  0  0  4 -4  0  0  0  0  0  0
     2 -2  2 -2 -2  2 -2  2  0  0  0  0  0  0  0  0 -4  4  0  0  0  0
     2 -2  2 -2 -2  2 -2  2  0  0  0  0  0  0  0  0  4 -4  0  0  0  0
     2  2 -2 -2 -2 -2  2  2  0  0  0  0  0  0  0  0  0  0 -4  4  0  0
     2  2 -2 -2 -2 -2  2  2  0  0  0  0  0  0  0  0  0  0  4 -4  0  0
     2 -2 -2  2 -2  2  2 -2  0  0  0  0  0  0  0  0  0  0  0  0 -4  4
     2 -2 -2  2 -2  2  2 -2  0  0  0  0  0  0  0  0  0  0  0  0  4 -4
";

const RANK4_S: &str = "
     1  1  1  1
     1  1 -1 -1
     1 -1 -1  1
     1 -1  1 -1
";

const RANK16_S: &str = "
     1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1
     1  1  1  1 -1 -1 -1 -1  1  1  1  1 -1 -1 -1 -1
     1  1  1  1  1  1  1  1 -1 -1 -1 -1 -1 -1 -1 -1
     1  1  1  1 -1 -1 -1 -1 -1 -1 -1 -1  1  1  1  1
     1 -1  1 -1 -1  1 -1  1  i  i -i -i -i  i -i  i
     1 -1  1 -1  1 -1  1 -1 -i -i  i  i -i  i -i  i
     1 -1  1 -1 -1  1 -1  1 -i -i  i  i  i -i  i -i
     1 -1  1 -1  1 -1  1 -1  i  i -i -i  i -i  i -i
     1  1 -1 -1  i -i -i  i -1  1  1 -1 -i -i  i  i
     1  1 -1 -1  i -i -i  i  1 -1 -1  1  i  i -i -i
     1  1 -1 -1 -i  i  i -i  1 -1 -1  1 -i -i  i  i
     1  1 -1 -1 -i  i  i -i -1  1  1 -1  i  i -i -i
     1 -1 -1  1 -i -i  i  i -i  i -i  i -1  1  1 -1
     1 -1 -1  1  i  i -i -i -i  i -i  i  1 -1 -1  1
     1 -1 -1  1 -i -i  i  i  i -i  i -i  1 -1 -1  1
     1 -1 -1  1  i  i -i -i  i -i  i -i -1  1  1 -1
";

const RANK22_T: &str = "1 1 1 1 1 1 1 1 -i i -i i -i i -i i -i i -i i -i i";
const RANK4_T: &str = "1 1 -i i";
const RANK16_T: &str = "1 1 1 1 -i i -i i -i i i -i i -i -i i";

fn token(t: &str) -> Result<CycNumber, ModDataError> {
    match t {
        "i" => Ok(CycNumber::zeta(4, 1)),
        "-i" => Ok(CycNumber::zeta(4, 3)),
        _ => t.parse::<i64>().map(CycNumber::from_int).map_err(|_| ModDataError::Malformed(format!("bad table token {t:?}"))),
    }
}

fn root_token(t: &str) -> Result<RootOfUnity, ModDataError> {
    t.parse::<RootOfUnity>().map_err(ModDataError::from)
}

/// Parse a whitespace table of S entries and a line of twists.
pub(crate) fn from_tables(s: &str, t: &str) -> Result<ModularData, ModDataError> {
    let rows = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(token).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let twists = t.split_whitespace().map(root_token).collect::<Result<Vec<_>, _>>()?;
    ModularData::new(rows, twists)
}

/// C(C_n, q) with q(x) = zeta^(a x^2), zeta a primitive n-th (n odd) or 2n-th (n even) root of unity.
/// S[x][y] = q(x) q(y) / q(x+y), the inverse of the associated bicharacter.
pub fn pointed_cyclic(n: u64, a: i64) -> Result<ModularData, ModDataError> {
    let m = if n % 2 == 0 { 2 * n } else { n };
    if n == 0 || gcd_u64(a.rem_euclid(m as i64) as u64, m) != 1 {
        return Err(ModDataError::Malformed(format!("q(x) = z{m}^({a} x^2) is degenerate on C_{n}")));
    }
    let q = |x: u64| RootOfUnity::new(a * (x * x) as i64, m);
    let s = (0..n)
        .map(|x| (0..n).map(|y| CycNumber::from_root(&q(x).mul(&q(y)).div(&q(x + y)))).collect())
        .collect();
    ModularData::new(s, (0..n).map(q).collect())
}

/// Quantum integer [m]_q = q^(m-1) + q^(m-3) + ... + q^(1-m) for q = zeta_{2l}^a.
fn quantum_int(m: i64, l: u64, a: i64) -> CycNumber {
    let terms: Vec<CycNumber> = (0..m).map(|i| CycNumber::zeta(2 * l, a * (m - 1 - 2 * i))).collect();
    CycNumber::sum(terms.iter())
}

/// Adjoint subcategory of the sl_2 category at q = zeta_{2l}^a, l odd:
/// simples V_j for even j ≤ l-2, S_ij = [(i+1)(j+1)]_q, θ_j = q^(j(j+2)/2).
pub fn sl2_adjoint(l: u64, a: i64) -> Result<ModularData, ModDataError> {
    if l < 3 || l % 2 == 0 || gcd_u64(a.rem_euclid(2 * l as i64) as u64, 2 * l) != 1 {
        return Err(ModDataError::Malformed(format!("need odd l ≥ 3 and a coprime to {}", 2 * l)));
    }
    let js: Vec<i64> = (0..=(l as i64 - 2)).step_by(2).collect();
    let s = js.iter().map(|&i| js.iter().map(|&j| quantum_int((i + 1) * (j + 1), l, a)).collect()).collect();
    let t = js.iter().map(|&j| RootOfUnity::new(a * j * (j + 2) / 2, 2 * l)).collect();
    ModularData::new(s, t)
}

/// Fibonacci data with q = zeta_10^a: dims 1, [3]_q, twist q^4.
pub fn fibonacci(a: i64) -> Result<ModularData, ModDataError> {
    sl2_adjoint(5, a)
}

/// Ising data with twists (1, q, -1) for q = zeta_16^a, a odd.
pub fn ising(a: i64) -> Result<ModularData, ModDataError> {
    if a.rem_euclid(2) == 0 {
        return Err(ModDataError::Malformed("Ising needs a primitive 16th root".into()));
    }
    let r2 = &CycNumber::zeta(8, 1) - &CycNumber::zeta(8, 3);
    let one = CycNumber::one;
    let s = vec![
        vec![one(), r2.clone(), one()],
        vec![r2.clone(), CycNumber::zero(), -&r2],
        vec![one(), -&r2, one()],
    ];
    ModularData::new(s, vec![RootOfUnity::one(), RootOfUnity::new(a, 16), RootOfUnity::minus_one()])
}

const NAMES: [&str; 9] = [
    "double_c2x3_rank22",
    "pointed_rank4",
    "pointed_rank16",
    "semion",
    "pointed_c3",
    "pointed_c5",
    "fibonacci",
    "ising",
    "sl2_7_adjoint",
];

pub fn fixture_names() -> &'static [&'static str] {
    &NAMES
}

pub fn fixture(name: &str) -> Result<ModularData, ModDataError> {
    match name {
        "double_c2x3_rank22" => from_tables(RANK22_S, RANK22_T),
        "pointed_rank4" => from_tables(RANK4_S, RANK4_T),
        "pointed_rank16" => from_tables(RANK16_S, RANK16_T),
        "semion" => pointed_cyclic(2, 1),
        "pointed_c3" => pointed_cyclic(3, 1),
        "pointed_c5" => pointed_cyclic(5, 1),
        "fibonacci" => fibonacci(1),
        "ising" => ising(1),
        "sl2_7_adjoint" => sl2_adjoint(7, 1),
        _ => Err(ModDataError::UnknownFixture(name.to_string())),
    }
}

/// Every named fixture, in a fixed order.
pub fn fixtures() -> Vec<(&'static str, ModularData)> {
    NAMES.iter().map(|n| (*n, fixture(n).expect("built-in fixture parses"))).collect()
}
