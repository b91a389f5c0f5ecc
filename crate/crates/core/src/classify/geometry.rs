//! τ_1 = Σ D_a θ_a = ξ√D read as plane geometry, and the quadratic Σ D_a = |Σ D_a θ_a|².

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::real_text;
use crate::exactnum::arith::lcm_u64;
use crate::exactnum::{CycNumber, RootOfUnity};

/// The quadratic relation on (D_a): Σ D_a = Σ_a D_a² + Σ_{a<b} (θ_a θ_b⁻¹ + θ_a⁻¹ θ_b) D_a D_b.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussQuadric {
    pub twists: Vec<RootOfUnity>,
    /// Cross coefficients c_ab for a < b, row-major.
    pub cross: Vec<(usize, usize, CycNumber)>,
}

impl GaussQuadric {
    pub fn new(twists: &[RootOfUnity]) -> Self {
        let mut cross = Vec::new();
        for a in 0..twists.len() {
            for b in a + 1..twists.len() {
                let r = twists[a].div(&twists[b]);
                let c = &CycNumber::from_root(&r) + &CycNumber::from_root(&r.inv());
                cross.push((a, b, c));
            }
        }
        GaussQuadric { twists: twists.to_vec(), cross }
    }

    /// Right side minus left side; zero exactly on solutions.
    pub fn residual(&self, dims: &[CycNumber]) -> CycNumber {
        let mut acc = CycNumber::zero();
        for d in dims {
            acc = &acc + &(d * d);
            acc = &acc - d;
        }
        for (a, b, c) in &self.cross {
            acc = &acc + &(c * &(&dims[*a] * &dims[*b]));
        }
        acc
    }

    pub fn coefficient(&self, a: usize, b: usize) -> Option<&CycNumber> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.cross.iter().find(|(x, y, _)| *x == a && *y == b).map(|(_, _, c)| c)
    }
}

fn dim_name(t: &RootOfUnity) -> String {
    if t.is_one() {
        "D_1".into()
    } else {
        format!("D[{t}]")
    }
}

impl fmt::Display for GaussQuadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.twists.iter().map(dim_name).collect();
        let lhs = names.join(" + ");
        let mut rhs: Vec<String> = names.iter().map(|n| format!("{n}²")).collect();
        for (a, b, c) in &self.cross {
            if c.is_zero() {
                continue;
            }
            rhs.push(format!("({})·{}·{}", real_text(c), names[*a], names[*b]));
        }
        write!(f, "{lhs} = {}", rhs.join(" + "))
    }
}

/// Where ξ sits relative to the set of strictly positive combinations of the twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConePosition {
    Inside,
    Outside,
}

/// Turn positions of the twists (and ξ) over a common denominator.
fn positions(twists: &[RootOfUnity], extra: &RootOfUnity) -> (u64, Vec<u64>, u64) {
    let l = twists.iter().chain(std::iter::once(extra)).fold(1, |m, t| lcm_u64(m, t.denom()));
    let pos = |t: &RootOfUnity| t.numer() * (l / t.denom());
    let mut p: Vec<u64> = twists.iter().map(pos).collect();
    p.sort_unstable();
    p.dedup();
    (l, p, pos(extra))
}

/// Largest cyclic gap between consecutive positions, with the position where it ends.
fn largest_gap(l: u64, p: &[u64]) -> (u64, u64) {
    let k = p.len();
    (0..k)
        .map(|i| {
            let next = if i + 1 < k { p[i + 1] } else { p[0] + l };
            (next - p[i], p[(i + 1) % k])
        })
        .max()
        .expect("nonempty")
}

/// Is ξ·s (s > 0) a combination Σ D_a θ_a with every D_a > 0? Decided on exact turn positions.
pub fn cone_position(twists: &[RootOfUnity], xi: &RootOfUnity) -> ConePosition {
    let (l, p, x) = positions(twists, xi);
    if p.len() == 1 {
        return if p[0] == x { ConePosition::Inside } else { ConePosition::Outside };
    }
    let (gap, start) = largest_gap(l, &p);
    let rel = |v: u64| (v + l - start) % l;
    let span = l - gap;
    let inside = match (2 * gap).cmp(&l) {
        Ordering::Less => true,
        Ordering::Equal if p.len() == 2 => rel(x) == 0 || rel(x) == span,
        _ => rel(x) > 0 && rel(x) < span,
    };
    if inside {
        ConePosition::Inside
    } else {
        ConePosition::Outside
    }
}

/// Is 0 a combination of the points with every coefficient > 0?
pub fn admits_vanishing_combination(points: &[RootOfUnity]) -> bool {
    let (l, p, _) = positions(points, &RootOfUnity::one());
    match p.len() {
        0 | 1 => false,
        2 => 2 * (p[1] - p[0]) == l,
        _ => 2 * largest_gap(l, &p).0 < l,
    }
}

/// 1/κ² with κ = cos(half the angular span of the twists), when the span is below a half turn.
///
/// From √D = |τ_1| ≥ Re(τ_1 ū) = Σ D_a Re(θ_a ū) ≥ κ D for u on the bisector.
pub fn half_plane_bound(twists: &[RootOfUnity]) -> Option<CycNumber> {
    let (l, p, _) = positions(twists, &RootOfUnity::one());
    if p.len() < 2 {
        return None;
    }
    let (gap, _) = largest_gap(l, &p);
    if 2 * gap <= l {
        return None;
    }
    let half = RootOfUnity::new((l - gap) as i64, 2 * l);
    let kappa = (&CycNumber::from_root(&half) + &CycNumber::from_root(&half.inv())).scale(&BigRational::new(
        BigInt::one(),
        BigInt::from(2),
    ));
    (&kappa * &kappa).inv().ok()
}

/// D_a = linear·√D + quadratic·D.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimFormula {
    pub twist: RootOfUnity,
    pub linear: CycNumber,
    pub quadratic: CycNumber,
}

impl DimFormula {
    pub fn eval(&self, s: &CycNumber) -> CycNumber {
        &(&self.linear * s) + &(&self.quadratic * &(s * s))
    }
}

impl fmt::Display for DimFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.quadratic.is_zero() {
            parts.push(format!("({})·D", real_text(&self.quadratic)));
        }
        if !self.linear.is_zero() {
            parts.push(format!("({})·√D", real_text(&self.linear)));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} = {}", dim_name(&self.twist), parts.join(" + "))
    }
}

/// Outcome of [`gauss_geometry_solve`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometrySolution {
    pub twists: Vec<RootOfUnity>,
    pub xi: RootOfUnity,
    pub feasible: bool,
    pub reason: Option<String>,
    /// One formula per twist, in input order; empty when infeasible.
    pub dims: Vec<DimFormula>,
    /// √D when the relations fix it.
    pub sqrt_d: Option<CycNumber>,
}

impl GeometrySolution {
    fn infeasible(twists: &[RootOfUnity], xi: &RootOfUnity, reason: String) -> Self {
        GeometrySolution { twists: twists.to_vec(), xi: *xi, feasible: false, reason: Some(reason), dims: Vec::new(), sqrt_d: None }
    }

    /// The D_a at a given √D.
    pub fn dims_at(&self, s: &CycNumber) -> Vec<CycNumber> {
        self.dims.iter().map(|d| d.eval(s)).collect()
    }

    pub fn relations(&self) -> Vec<String> {
        self.dims.iter().map(|d| d.to_string()).collect()
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn re(t: &RootOfUnity) -> CycNumber {
    (&CycNumber::from_root(t) + &CycNumber::from_root(&t.inv())).scale(&half())
}

fn im(t: &RootOfUnity) -> CycNumber {
    let i = CycNumber::zeta(4, 1);
    (&(&CycNumber::from_root(&t.inv()) - &CycNumber::from_root(t)) * &i).scale(&half())
}

fn det2(m: [[&CycNumber; 2]; 2]) -> CycNumber {
    &(m[0][0] * m[1][1]) - &(m[0][1] * m[1][0])
}

fn det3(m: &[[CycNumber; 3]; 3]) -> CycNumber {
    let minor = |r: usize, c: usize| -> CycNumber {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        det2([[&m[rows[0]][cols[0]], &m[rows[0]][cols[1]]], [&m[rows[1]][cols[0]], &m[rows[1]][cols[1]]]])
    };
    let mut acc = CycNumber::zero();
    for c in 0..3 {
        let term = &m[0][c] * &minor(0, c);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Solve the square system `rows · D = rhs` by Cramer's rule; None when singular.
fn cramer(rows: &[Vec<CycNumber>], rhs: &[CycNumber]) -> Option<Vec<CycNumber>> {
    let k = rows.len();
    let det = |m: &[Vec<CycNumber>]| -> CycNumber {
        match k {
            1 => m[0][0].clone(),
            2 => det2([[&m[0][0], &m[0][1]], [&m[1][0], &m[1][1]]]),
            _ => det3(&[
                [m[0][0].clone(), m[0][1].clone(), m[0][2].clone()],
                [m[1][0].clone(), m[1][1].clone(), m[1][2].clone()],
                [m[2][0].clone(), m[2][1].clone(), m[2][2].clone()],
            ]),
        }
    };
    let d = det(rows);
    if d.is_zero() {
        return None;
    }
    (0..k)
        .map(|c| {
            let m: Vec<Vec<CycNumber>> = rows
                .iter()
                .zip(rhs)
                .map(|(r, v)| r.iter().enumerate().map(|(j, x)| if j == c { v.clone() } else { x.clone() }).collect())
                .collect();
            det(&m).div_ref(&d).ok()
        })
        .collect()
}

/// Real and imaginary parts of Σ D_a θ_a = ξ√D together with Σ D_a = D.
///
/// Each D_a comes out as α_a√D + β_a D. Leftover equations either fix √D or rule the pair out.
pub fn gauss_geometry_solve(twists: &[RootOfUnity], xi: &RootOfUnity) -> GeometrySolution {
    let mut ts = twists.to_vec();
    ts.sort();
    ts.dedup();
    if ts.is_empty() || ts.len() > 3 {
        return GeometrySolution::infeasible(twists, xi, format!("{} twists; expected 1 to 3", ts.len()));
    }
    let twists = ts;
    if cone_position(&twists, xi) == ConePosition::Outside {
        return GeometrySolution::infeasible(
            &twists,
            xi,
            format!("ξ = {xi} is not a positive combination of the twists"),
        );
    }
    let k = twists.len();
    // Rows: Re, Im, sum. Right sides as (coefficient of √D, coefficient of D).
    let all_rows: [Vec<CycNumber>; 3] =
        [twists.iter().map(re).collect(), twists.iter().map(im).collect(), vec![CycNumber::one(); k]];
    let all_rhs: [(CycNumber, CycNumber); 3] =
        [(re(xi), CycNumber::zero()), (im(xi), CycNumber::zero()), (CycNumber::zero(), CycNumber::one())];
    let subsets: Vec<Vec<usize>> = match k {
        1 => vec![vec![2], vec![0], vec![1]],
        2 => vec![vec![0, 2], vec![1, 2], vec![0, 1]],
        _ => vec![vec![0, 1, 2]],
    };
    for chosen in subsets {
        let rows: Vec<Vec<CycNumber>> = chosen.iter().map(|&r| all_rows[r].clone()).collect();
        let lin_rhs: Vec<CycNumber> = chosen.iter().map(|&r| all_rhs[r].0.clone()).collect();
        let quad_rhs: Vec<CycNumber> = chosen.iter().map(|&r| all_rhs[r].1.clone()).collect();
        let (Some(alpha), Some(beta)) = (cramer(&rows, &lin_rhs), cramer(&rows, &quad_rhs)) else {
            continue;
        };
        let dims: Vec<DimFormula> = twists
            .iter()
            .zip(alpha.into_iter().zip(beta))
            .map(|(t, (linear, quadratic))| DimFormula { twist: *t, linear, quadratic })
            .collect();
        // Remaining equations: c1·s + c2·s² = 0.
        let mut forced: Option<CycNumber> = None;
        for r in (0..3).filter(|r| !chosen.contains(r)) {
            let mut c1 = all_rhs[r].0.neg_ref();
            let mut c2 = all_rhs[r].1.neg_ref();
            for (coef, d) in all_rows[r].iter().zip(&dims) {
                c1 = &c1 + &(coef * &d.linear);
                c2 = &c2 + &(coef * &d.quadratic);
            }
            match (c1.is_zero(), c2.is_zero()) {
                (true, true) => {}
                (false, true) => {
                    return GeometrySolution::infeasible(&twists, xi, "the relations force √D = 0".into());
                }
                (_, false) => {
                    let s = c1.neg_ref().div_ref(&c2).expect("nonzero");
                    if s.real_sign() != Ordering::Greater {
                        return GeometrySolution::infeasible(
                            &twists,
                            xi,
                            format!("the relations force √D = {} ≤ 0", real_text(&s)),
                        );
                    }
                    if forced.as_ref().is_some_and(|f| *f != s) {
                        return GeometrySolution::infeasible(&twists, xi, "inconsistent values of √D".into());
                    }
                    forced = Some(s);
                }
            }
        }
        let mut sol =
            GeometrySolution { twists: twists.clone(), xi: *xi, feasible: true, reason: None, dims, sqrt_d: forced };
        if let Some(s) = sol.sqrt_d.clone() {
            let values = sol.dims_at(&s);
            for (t, v) in twists.iter().zip(&values) {
                let bad = if t.is_one() {
                    !v.is_totally_geq(&BigRational::one())
                } else {
                    v.real_sign() != Ordering::Greater
                };
                if bad {
                    let need = if t.is_one() { "totally ≥ 1" } else { "positive" };
                    sol.feasible = false;
                    sol.reason = Some(format!("{} = {} is not {need}", dim_name(t), real_text(v)));
                    sol.dims.clear();
                    break;
                }
            }
        }
        return sol;
    }
    GeometrySolution::infeasible(&twists, xi, "degenerate linear system".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn cone_positions() {
        let t = [RootOfUnity::one(), r("-1"), r("z4")];
        assert_eq!(cone_position(&t, &r("z8")), ConePosition::Inside);
        assert_eq!(cone_position(&t, &RootOfUnity::one()), ConePosition::Outside);
        let pm = [RootOfUnity::one(), r("-1")];
        assert_eq!(cone_position(&pm, &r("-1")), ConePosition::Inside);
        assert_eq!(cone_position(&pm, &r("z4")), ConePosition::Outside);
        let wide = [RootOfUnity::one(), r("z3"), r("z3^2")];
        assert_eq!(cone_position(&wide, &r("z8^3")), ConePosition::Inside);
    }

    #[test]
    fn quadric_vanishes_on_semion_pair() {
        let q = GaussQuadric::new(&[RootOfUnity::one(), r("z4")]);
        assert!(q.residual(&[CycNumber::one(), CycNumber::one()]).is_zero());
        assert!(!q.residual(&[CycNumber::one(), CycNumber::from_int(2)]).is_zero());
    }
}
