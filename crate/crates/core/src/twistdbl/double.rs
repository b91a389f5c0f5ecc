//! Twisted Drinfeld doubles of finite abelian groups.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::cocycle::{enumerate_cocycle_classes, ThreeCocycle};
use super::DoubleError;
use crate::exactnum::arith::{isqrt_exact, lcm_u64};
use crate::exactnum::{CycNumber, RootOfUnity};
use crate::metricgrp::FiniteAbelianGroup;
use crate::moddata::{validate, ModularData};

/// A 2-cochain on G as a table `beta[h][k]`.
pub type TwoCochain = Vec<Vec<RootOfUnity>>;

/// β_g(h, k) = ω(g, h, k) ω(h, k, g) / ω(h, g, k).
pub fn slant(w: &ThreeCocycle, g: usize) -> TwoCochain {
    let n = w.group().order();
    (0..n)
        .map(|h| (0..n).map(|k| w.get(g, h, k).mul(&w.get(h, k, g)).div(&w.get(h, g, k))).collect())
        .collect()
}

/// β(x, y) β(x + y, z) = β(x, y + z) β(y, z) on all triples.
pub fn is_two_cocycle(g: &FiniteAbelianGroup, beta: &TwoCochain) -> bool {
    let n = g.order();
    let add = g.addition_table();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| beta[x][y].mul(&beta[add[x][y]][z]) == beta[x][add[y][z]].mul(&beta[y][z]))
        })
    })
}

/// Radical of the commutator pairing β(h, k) / β(k, h).
pub fn radical(g: &FiniteAbelianGroup, beta: &TwoCochain) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&h| (0..n).all(|k| beta[h][k] == beta[k][h])).collect()
}

/// A simple object (g, χ): χ vanishes off the radical R_g and equals dim·λ on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleSimple {
    pub sector: usize,
    pub dim: u64,
    /// λ on R_g as `(element, value)`, sorted by element.
    pub lambda: Vec<(usize, RootOfUnity)>,
}

impl DoubleSimple {
    pub fn lambda_at(&self, x: usize) -> Option<RootOfUnity> {
        self.lambda.binary_search_by_key(&x, |&(e, _)| e).ok().map(|i| self.lambda[i].1)
    }

    /// χ(x), the projective character.
    pub fn character(&self, x: usize) -> CycNumber {
        match self.lambda_at(x) {
            Some(l) => &CycNumber::from_root(&l) * &CycNumber::from_int(self.dim as i64),
            None => CycNumber::zero(),
        }
    }

    pub fn twist(&self) -> RootOfUnity {
        self.lambda_at(self.sector).expect("sector element lies in its radical")
    }
}

/// Cyclic generators of the subgroup `sub`, greedily by decreasing order.
fn subgroup_generators(g: &FiniteAbelianGroup, sub: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = sub.to_vec();
    order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut span: BTreeSet<usize> = BTreeSet::from([0]);
    let mut gens = Vec::new();
    for x in order {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<usize> = span.iter().copied().collect();
        while let Some(y) = frontier.pop() {
            let z = g.add(y, x);
            if span.insert(z) {
                frontier.push(z);
            }
        }
    }
    gens
}

/// Every λ: R → C^× with λ(x) λ(y) = β(x, y) λ(x + y), the first one trivial when β|R is.
fn projective_lambdas(g: &FiniteAbelianGroup, beta: &TwoCochain, rad: &[usize]) -> Vec<Vec<(usize, RootOfUnity)>> {
    let gens = subgroup_generators(g, rad);
    // λ(r)^m = Π_{j<m} β(j r, r) for a generator r of order m
    let roots: Vec<Vec<RootOfUnity>> = gens
        .iter()
        .map(|&r| {
            let m = g.element_order(r);
            let mut p = RootOfUnity::one();
            let mut x = 0;
            for _ in 0..m {
                p = p.mul(&beta[x][r]);
                x = g.add(x, r);
            }
            (0..m).map(|j| RootOfUnity::new(p.numer() as i64 + (j * p.denom()) as i64, m * p.denom())).collect()
        })
        .collect();
    let n = g.order();
    let in_rad: Vec<bool> = (0..n).map(|x| rad.binary_search(&x).is_ok()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut lam: Vec<Option<RootOfUnity>> = vec![None; n];
        lam[0] = Some(RootOfUnity::one());
        let mut queue = VecDeque::from([0usize]);
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop_front() {
            let lx = lam[x].expect("queued elements are assigned");
            for (t, &r) in gens.iter().enumerate() {
                let y = g.add(x, r);
                let v = lx.mul(&roots[t][choice[t]]).div(&beta[x][r]);
                match lam[y] {
                    None => {
                        lam[y] = Some(v);
                        queue.push_back(y);
                    }
                    Some(u) if u != v => {
                        ok = false;
                        break 'bfs;
                    }
                    _ => {}
                }
            }
        }
        if ok {
            ok = rad.iter().all(|&x| {
                rad.iter().all(|&y| {
                    let (lx, ly, lxy) = (lam[x].unwrap(), lam[y].unwrap(), lam[g.add(x, y)].unwrap());
                    lx.mul(&ly) == beta[x][y].mul(&lxy)
                })
            });
        }
        if ok {
            out.push((0..n).filter(|&x| in_rad[x]).map(|x| (x, lam[x].unwrap())).collect());
        }
        let mut i = 0;
        while i < gens.len() {
            choice[i] += 1;
            if choice[i] < roots[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == gens.len() {
            break;
        }
    }
    out
}

/// Z(Vec_G^ω) with its simples and validated modular data.
#[derive(Clone, Debug)]
pub struct TwistedDouble {
    pub cocycle: ThreeCocycle,
    pub simples: Vec<DoubleSimple>,
    pub data: ModularData,
}

impl TwistedDouble {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.cocycle.group()
    }

    pub fn twist_set(&self) -> BTreeSet<RootOfUnity> {
        self.data.twist_set()
    }

    /// [Y : I(x)] for the invertible object x of Vec_G^ω: dim Y when Y lies over x.
    pub fn induction_multiplicity(&self, y: usize, x: usize) -> u64 {
        let s = &self.simples[y];
        if s.sector == x {
            s.dim
        } else {
            0
        }
    }

    /// Σ_Y [Y : I(x)] dim(Y) θ_Y^power.
    pub fn trace_sum(&self, x: usize, power: i64) -> CycNumber {
        let terms: Vec<CycNumber> = (0..self.simples.len())
            .filter_map(|y| {
                let m = self.induction_multiplicity(y, x);
                (m > 0).then(|| {
                    let c = CycNumber::from_int((m * self.simples[y].dim) as i64);
                    &c * &CycNumber::from_root(&self.simples[y].twist().pow(power))
                })
            })
            .collect();
        CycNumber::sum(&terms)
    }

    pub fn trace_tests(&self) -> TraceReport {
        let g = self.group();
        let order = g.order() as i64;
        let zero_trace = (1..g.order())
            .map(|x| {
                let sum = self.trace_sum(x, 1);
                TraceCheck { element: x, passed: sum.is_zero(), sum: sum.to_string() }
            })
            .collect();
        let squared_trace = (1..g.order())
            .filter(|&x| g.add(x, x) == 0)
            .map(|x| {
                let sum = self.trace_sum(x, 2);
                let passed = sum == CycNumber::from_int(order) || sum == CycNumber::from_int(-order);
                TraceCheck { element: x, passed, sum: sum.to_string() }
            })
            .collect();
        TraceReport { zero_trace, squared_trace }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCheck {
    pub element: usize,
    pub passed: bool,
    pub sum: String,
}

/// Zero-trace sums for every nontrivial invertible, squared-trace sums for the self-dual ones.
#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub zero_trace: Vec<TraceCheck>,
    pub squared_trace: Vec<TraceCheck>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.zero_trace.iter().chain(&self.squared_trace).all(|c| c.passed)
    }
}

/// Simple objects of Z(Vec_G^ω): a sector x and a β_x-projective character of the radical.
pub fn double_simples(w: &ThreeCocycle) -> Result<Vec<DoubleSimple>, DoubleError> {
    let g = w.group();
    let n = g.order();
    let mut simples = Vec::new();
    for sector in 0..n {
        let beta = slant(w, sector);
        let rad = radical(g, &beta);
        if rad.binary_search(&sector).is_err() {
            return Err(DoubleError::Convention(format!("sector {sector} is outside its own radical")));
        }
        let dim = isqrt_exact((n / rad.len()) as u64)
            .ok_or_else(|| DoubleError::Convention(format!("[G : R] = {} is not a square", n / rad.len())))?;
        let lambdas = projective_lambdas(g, &beta, &rad);
        if lambdas.len() != rad.len() {
            return Err(DoubleError::Convention(format!(
                "sector {sector}: {} projective characters, expected {}",
                lambdas.len(),
                rad.len()
            )));
        }
        simples.extend(lambdas.into_iter().map(|lambda| DoubleSimple { sector, dim, lambda }));
    }
    Ok(simples)
}

/// Build the double without running the validator.
pub fn build_double(w: &ThreeCocycle) -> Result<TwistedDouble, DoubleError> {
    let simples = double_simples(w)?;
    let s = simples
        .iter()
        .map(|a| {
            simples
                .iter()
                .map(|b| match (a.lambda_at(b.sector), b.lambda_at(a.sector)) {
                    (Some(x), Some(y)) => {
                        let c = CycNumber::from_int((a.dim * b.dim) as i64);
                        &c * &CycNumber::from_root(&x.mul(&y).inv())
                    }
                    _ => CycNumber::zero(),
                })
                .collect()
        })
        .collect();
    let t = simples.iter().map(DoubleSimple::twist).collect();
    let data = ModularData::new(s, t)?;
    Ok(TwistedDouble { cocycle: w.clone(), simples, data })
}

/// The double's modular data, rejected unless it passes every check.
pub fn twisted_double(w: &ThreeCocycle) -> Result<TwistedDouble, DoubleError> {
    let d = build_double(w)?;
    let report = validate(&d.data);
    if !report.passed() {
        return Err(DoubleError::Convention(format!("{w:?}: {}", report.summary())));
    }
    Ok(d)
}

pub fn double_modular_data(w: &ThreeCocycle) -> Result<ModularData, DoubleError> {
    Ok(twisted_double(w)?.data)
}

/// One scanned (G, ω) pair.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleScanRow {
    pub group: FiniteAbelianGroup,
    pub omega_index: u64,
    pub omega: String,
    pub rank: usize,
    pub twists: Vec<RootOfUnity>,
    pub fs_exponent: u64,
}

/// Every (G, ω) with at most `max_twists` distinct twists, in input and index order.
pub fn classify_doubles_by_twistcount(
    groups: &[FiniteAbelianGroup],
    max_twists: usize,
) -> Result<Vec<DoubleScanRow>, DoubleError> {
    let mut out = Vec::new();
    for g in groups {
        let classes = enumerate_cocycle_classes(g)?;
        let rows: Result<Vec<Option<DoubleScanRow>>, DoubleError> = classes
            .par_iter()
            .enumerate()
            .map(|(i, w)| {
                let simples = double_simples(w)?;
                let twists: Vec<RootOfUnity> =
                    simples.iter().map(DoubleSimple::twist).collect::<BTreeSet<_>>().into_iter().collect();
                let fs_exponent = twists.iter().fold(1, |a, t| lcm_u64(a, t.order()));
                Ok((twists.len() <= max_twists).then(|| DoubleScanRow {
                    group: g.clone(),
                    omega_index: i as u64,
                    omega: w.to_string(),
                    rank: simples.len(),
                    twists,
                    fs_exponent,
                }))
            })
            .collect();
        out.extend(rows?.into_iter().flatten());
    }
    Ok(out)
}
