//! Exact axiom checks for modular data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::engine::{rational_part, Elt, Mat, Ring};
use super::ModularData;
use crate::exactnum::{CycNumber, RootOfUnity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Symmetry,
    UnitRow,
    VerlindeIntegrality,
    GaussSumProduct,
    Balancing,
    SFourthPower,
    ChargeConjugationTwists,
    StCubed,
    ExponentDividesLevel,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::Symmetry,
        CheckName::UnitRow,
        CheckName::VerlindeIntegrality,
        CheckName::GaussSumProduct,
        CheckName::Balancing,
        CheckName::SFourthPower,
        CheckName::ChargeConjugationTwists,
        CheckName::StCubed,
        CheckName::ExponentDividesLevel,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CheckName::Symmetry => "S symmetric",
            CheckName::UnitRow => "unit row",
            CheckName::VerlindeIntegrality => "Verlinde integrality",
            CheckName::GaussSumProduct => "tau_1 tau_-1 = D",
            CheckName::Balancing => "balancing",
            CheckName::SFourthPower => "s^4 = 1",
            CheckName::ChargeConjugationTwists => "s^2 t = t s^2",
            CheckName::StCubed => "(st)^3 = s^2",
            CheckName::ExponentDividesLevel => "N divides n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: CheckName,
    pub status: Status,
    pub detail: String,
}

/// Fusion coefficients N_{ij}^k recovered by the Verlinde formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRules {
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
}

impl FusionRules {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Simples X with X ⊗ X* = 1.
    pub fn invertibles(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| (0..self.rank).map(|k| self.get(i, self.dual[i], k)).sum::<u32>() == 1).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub rank: usize,
    pub checks: Vec<Check>,
    pub global_dim: Option<CycNumber>,
    pub fs_exponent: u64,
    pub central_charge: Option<RootOfUnity>,
    pub gamma: Option<RootOfUnity>,
    /// Order of the normalized t.
    pub t_order: Option<u64>,
    #[serde(skip)]
    pub fusion: Option<FusionRules>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: CheckName) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn check_passed(&self, name: CheckName) -> bool {
        self.check(name).is_some_and(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass).collect()
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let d = self.global_dim.as_ref().map_or("?".to_string(), |d| d.to_string());
        let xi = self.central_charge.map_or("?".to_string(), |x| x.to_string());
        let verdict = if self.passed() {
            "all checks pass".to_string()
        } else {
            let names: Vec<&str> = self.failures().iter().map(|c| c.name.label()).collect();
            format!("failed: {}", names.join(", "))
        };
        format!("{} simples, N={}, ξ={}, D={}, {}", self.rank, self.fs_exponent, xi, d, verdict)
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, name: CheckName, result: Result<(), String>) -> bool {
        let ok = result.is_ok();
        let (status, detail) = match result {
            Ok(()) => (Status::Pass, String::new()),
            Err(e) => (Status::Fail, e),
        };
        self.checks.push(Check { name, status, detail });
        ok
    }

    fn skip_rest(&mut self, reason: &str) {
        for name in CheckName::ALL {
            if self.checks.iter().all(|c| c.name != name) {
                self.checks.push(Check { name, status: Status::Skipped, detail: reason.to_string() });
            }
        }
    }
}

fn lcm_dens<'a>(xs: impl Iterator<Item = &'a CycNumber>) -> BigInt {
    xs.fold(BigInt::one(), |l, x| l.lcm(x.denominator()))
}

fn to_mat(ring: &Ring, m: &[Vec<CycNumber>], den: &BigInt) -> Option<Mat> {
    m.iter().map(|row| row.iter().map(|x| ring.elt(x, den)).collect()).collect()
}

fn as_i128(x: &BigInt) -> Option<i128> {
    num_traits::ToPrimitive::to_i128(x)
}

/// Run every check and collect the results; never panics on bad input.
pub fn validate(md: &ModularData) -> ValidationReport {
    let r = md.rank();
    let mut b = Builder { checks: Vec::new() };
    let mut report = ValidationReport {
        rank: r,
        checks: Vec::new(),
        global_dim: None,
        fs_exponent: md.fs_exponent(),
        central_charge: None,
        gamma: None,
        t_order: None,
        fusion: None,
    };
    let s = md.s();
    let t = md.t();

    let asym = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).find(|&(i, j)| s[i][j] != s[j][i]);
    b.push(CheckName::Symmetry, asym.map_or(Ok(()), |(i, j)| Err(format!("S[{i}][{j}] != S[{j}][{i}]"))));

    let unit = if !s[0][0].is_one() {
        Err(format!("S[0][0] = {}", s[0][0]))
    } else if !t[0].is_one() {
        Err(format!("T[0] = {}", t[0]))
    } else if let Some(j) = (0..r).find(|&j| s[0][j].is_zero() || !s[0][j].is_real()) {
        Err(format!("dimension S[0][{j}] = {} is zero or not real", s[0][j]))
    } else {
        Ok(())
    };
    if !b.push(CheckName::UnitRow, unit) {
        b.skip_rest("unit row invalid");
        report.checks = b.checks;
        return report;
    }

    let d = md.global_dim();
    report.global_dim = Some(d.clone());
    let tau_p = md.gauss_sum(1);
    let tau_m = md.gauss_sum(-1);
    let prod = &tau_p * &tau_m;
    b.push(
        CheckName::GaussSumProduct,
        if prod == d { Ok(()) } else { Err(format!("tau_1 tau_-1 = {prod}, D = {d}")) },
    );

    let n = md.conductor();
    let ring = Ring::new(n);
    let ls = lcm_dens(s.iter().flatten());
    let Some(sm) = to_mat(&ring, s, &ls) else {
        b.skip_rest("entries exceed the fixed-width engine");
        report.checks = b.checks;
        return report;
    };
    let texp: Vec<u64> = t.iter().map(|x| x.exponent_in(n)).collect();

    // Verlinde: N_ij^k = Σ_m S_im S_jm Y_km with Y_km = conj(S_km) / (D d_m).
    let fusion = verlinde_tensor(&ring, md, &sm, &ls, &d);
    let fusion = match fusion {
        Ok(f) => {
            b.push(CheckName::VerlindeIntegrality, Ok(()));
            Some(f)
        }
        Err(e) => {
            b.push(CheckName::VerlindeIntegrality, Err(e));
            None
        }
    };

    match &fusion {
        Some(f) => {
            // S_ij θ_i θ_j = Σ_k N_{i* j}^k d_k θ_k
            let res = balancing(&ring, f, &sm, &texp).map_or(Ok(()), Err);
            b.push(CheckName::Balancing, res);
        }
        None => {
            b.checks.push(Check {
                name: CheckName::Balancing,
                status: Status::Skipped,
                detail: "no fusion rules".into(),
            });
        }
    }

    // S^2 = D C with C an involutive permutation fixing the unit.
    let s2 = ring.matmul(&sm, &sm);
    let ls2 = &ls * &ls;
    let charge = ring.elt(&d, &ls2).ok_or_else(|| "D not representable".to_string()).and_then(|de| charge_conjugation(&s2, &de));
    let ok_c = match charge {
        Ok(c) => {
            b.push(CheckName::SFourthPower, Ok(()));
            let bad = (0..r).find(|&i| t[c[i]] != t[i]);
            b.push(
                CheckName::ChargeConjugationTwists,
                bad.map_or(Ok(()), |i| Err(format!("θ_{i} != θ_{}", c[i]))),
            );
            true
        }
        Err(e) => {
            b.push(CheckName::SFourthPower, Err(e));
            false
        }
    };
    if !ok_c {
        b.checks.push(Check {
            name: CheckName::ChargeConjugationTwists,
            status: Status::Skipped,
            detail: "no charge conjugation".into(),
        });
    }

    // (ST)^3 = τ_1 S^2, equivalent to (st)^3 = s^2 for any choice of √D and γ.
    let st: Mat = sm.iter().map(|row| row.iter().zip(&texp).map(|(x, &e)| ring.shift(x, e)).collect()).collect();
    let st3 = ring.matmul(&ring.matmul(&st, &st), &st);
    let st_res = st_cubed(&ring, &st3, &s2, &tau_p, &ls);
    b.push(CheckName::StCubed, st_res);

    match md.normalized() {
        Ok(nd) => {
            report.central_charge = Some(nd.xi);
            report.gamma = Some(nd.gamma);
            report.t_order = Some(nd.n);
            let big_n = md.fs_exponent();
            b.push(
                CheckName::ExponentDividesLevel,
                if nd.n % big_n == 0 { Ok(()) } else { Err(format!("N = {big_n} does not divide n = {}", nd.n)) },
            );
        }
        Err(e) => {
            b.push(CheckName::ExponentDividesLevel, Err(e.to_string()));
        }
    }

    report.fusion = fusion;
    report.checks = b.checks;
    report
}

fn verlinde_tensor(ring: &Ring, md: &ModularData, sm: &Mat, ls: &BigInt, d: &CycNumber) -> Result<FusionRules, String> {
    let r = md.rank();
    let s = md.s();
    let mut inv = Vec::with_capacity(r);
    for m in 0..r {
        inv.push((d * &s[0][m]).inv().map_err(|e| e.to_string())?);
    }
    let y: Vec<Vec<CycNumber>> = (0..r).map(|k| (0..r).map(|m| &s[k][m].conj() * &inv[m]).collect()).collect();
    let ly = lcm_dens(y.iter().flatten());
    let ym = to_mat(ring, &y, &ly).ok_or("Verlinde denominators exceed the fixed-width engine")?;
    let total = as_i128(&(ls * ls * &ly)).ok_or("denominator overflow")?;
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let rows: Vec<Result<(usize, usize, Vec<u32>), String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p: Vec<Elt> = (0..r).map(|m| ring.mul(&sm[i][m], &sm[j][m])).collect();
            let mut acc = ring.scratch();
            let mut out = Vec::with_capacity(r);
            for k in 0..r {
                for m in 0..r {
                    if !p[m].is_empty() {
                        ring.mul_acc(&mut acc, &p[m], &ym[k][m], 0);
                    }
                }
                let v = ring.reduce(&mut acc);
                let q = rational_part(&v).ok_or_else(|| format!("N_{{{i},{j}}}^{k} is irrational"))?;
                if q % total != 0 || q < 0 {
                    return Err(format!("N_{{{i},{j}}}^{k} = {}/{} is not a nonnegative integer", q, total));
                }
                out.push(u32::try_from(q / total).map_err(|_| "fusion coefficient overflow".to_string())?);
            }
            Ok((i, j, out))
        })
        .collect();
    let mut n = vec![0u32; r * r * r];
    for row in rows {
        let (i, j, v) = row?;
        for (k, c) in v.into_iter().enumerate() {
            n[(i * r + j) * r + k] = c;
            n[(j * r + i) * r + k] = c;
        }
    }
    let mut dual = Vec::with_capacity(r);
    for i in 0..r {
        let cands: Vec<usize> = (0..r).filter(|&j| n[(i * r + j) * r] != 0).collect();
        match cands.as_slice() {
            [j] if n[(i * r + j) * r] == 1 => dual.push(*j),
            _ => return Err(format!("simple {i} has no unique dual")),
        }
    }
    Ok(FusionRules { rank: r, n, dual })
}

/// First failing pair of the balancing identity.
fn balancing(ring: &Ring, f: &FusionRules, sm: &Mat, texp: &[u64]) -> Option<String> {
    let r = sm.len();
    (0..r).into_par_iter().find_map_first(|i| {
        let a = f.dual(i);
        let mut acc = ring.scratch();
        for j in 0..r {
            for k in 0..r {
                let c = f.get(a, j, k);
                if c != 0 {
                    ring.add_acc(&mut acc, &sm[0][k], c as i128, texp[k]);
                }
            }
            let rhs = ring.reduce(&mut acc);
            if ring.shift(&sm[i][j], texp[i] + texp[j]) != rhs {
                return Some(format!("fails at ({i}, {j})"));
            }
        }
        None
    })
}

fn st_cubed(ring: &Ring, st3: &Mat, s2: &Mat, tau: &CycNumber, ls: &BigInt) -> Result<(), String> {
    let lt = tau.denominator().clone();
    let tau_e = ring.elt(tau, &lt).ok_or("τ_1 not representable")?;
    let lt_i = as_i128(&lt).ok_or("denominator overflow")?;
    let ls_i = as_i128(ls).ok_or("denominator overflow")?;
    for (i, row) in st3.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if Ring::scale(x, lt_i) != Ring::scale(&ring.mul(&tau_e, &s2[i][j]), ls_i) {
                return Err(format!("fails at ({i}, {j})"));
            }
        }
    }
    Ok(())
}

fn charge_conjugation(s2: &Mat, d: &Elt) -> Result<Vec<usize>, String> {
    let r = s2.len();
    let mut c = Vec::with_capacity(r);
    for (i, row) in s2.iter().enumerate() {
        let nz: Vec<usize> = (0..r).filter(|&j| !row[j].is_empty()).collect();
        match nz.as_slice() {
            [j] if row[*j] == *d => c.push(*j),
            _ => return Err(format!("row {i} of S^2 is not D times a unit vector")),
        }
    }
    if c[0] != 0 || (0..r).any(|i| c[c[i]] != i) {
        return Err("S^2/D is not an involution fixing the unit".into());
    }
    Ok(c)
}
