//! Modular data: the pair (S, T), its invariants and its validation.

pub(crate) mod engine;
mod fixtures;
mod galois;
mod relabel;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::arith::lcm_u64;
use crate::exactnum::{CycNumber, ExactError, RootOfUnity};

pub use fixtures::{fibonacci, fixture, fixture_names, fixtures, ising, pointed_cyclic, sl2_adjoint};
pub use galois::{galois_permutation, GaloisPermutation};
pub use relabel::{equal_up_to_relabeling, relabeling};
pub use validate::{validate, Check, CheckName, FusionRules, Status, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModDataError {
    #[error("malformed modular data: {0}")]
    Malformed(String),
    #[error("degenerate modular data: {0}")]
    Degenerate(String),
    #[error("no permutation of simples realises the Galois action of k = {0}")]
    NoGaloisPermutation(i64),
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Unnormalized modular data. Index 0 is the tensor unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModularData {
    s: Vec<Vec<CycNumber>>,
    t: Vec<RootOfUnity>,
}

impl ModularData {
    /// Shape checks only; the axioms are checked by [`validate`].
    pub fn new(s: Vec<Vec<CycNumber>>, t: Vec<RootOfUnity>) -> Result<Self, ModDataError> {
        let r = s.len();
        if r == 0 {
            return Err(ModDataError::Malformed("rank 0".into()));
        }
        if let Some(i) = s.iter().position(|row| row.len() != r) {
            return Err(ModDataError::Malformed(format!("S row {i} has length {} in a rank {r} matrix", s[i].len())));
        }
        if t.len() != r {
            return Err(ModDataError::Malformed(format!("T has {} entries, S has rank {r}", t.len())));
        }
        Ok(ModularData { s, t })
    }

    /// The rank-one data of Vec.
    pub fn trivial() -> Self {
        ModularData { s: vec![vec![CycNumber::one()]], t: vec![RootOfUnity::one()] }
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[Vec<CycNumber>] {
        &self.s
    }

    pub fn t(&self) -> &[RootOfUnity] {
        &self.t
    }

    pub fn s_entry(&self, i: usize, j: usize) -> &CycNumber {
        &self.s[i][j]
    }

    pub fn twist(&self, i: usize) -> RootOfUnity {
        self.t[i]
    }

    pub fn dim(&self, i: usize) -> &CycNumber {
        &self.s[0][i]
    }

    pub fn dims(&self) -> &[CycNumber] {
        &self.s[0]
    }

    /// Smallest n with every S entry in Q(zeta_n) and every twist an n-th root of unity.
    pub fn conductor(&self) -> u64 {
        let mut n = self.s_conductor();
        for t in &self.t {
            n = lcm_u64(n, t.order());
        }
        n
    }

    pub(crate) fn s_conductor(&self) -> u64 {
        self.s.iter().flatten().fold(1, |n, x| lcm_u64(n, x.conductor()))
    }

    /// D = Σ dim(X)^2.
    pub fn global_dim(&self) -> CycNumber {
        CycNumber::sum(self.dims().iter().map(|d| d * d).collect::<Vec<_>>().iter())
    }

    /// τ_m = Σ dim(X)^2 θ_X^m.
    pub fn gauss_sum(&self, m: i64) -> CycNumber {
        let terms: Vec<CycNumber> =
            self.dims().iter().zip(&self.t).map(|(d, t)| &(d * d) * &CycNumber::from_root(&t.pow(m))).collect();
        CycNumber::sum(terms.iter())
    }

    /// Frobenius-Schur exponent: the order of T.
    pub fn fs_exponent(&self) -> u64 {
        self.t.iter().fold(1, |n, t| lcm_u64(n, t.order()))
    }

    /// N_{ij}^k by the Verlinde formula, with complex conjugation as the Galois map z ↦ z^-1.
    pub fn verlinde(&self, i: usize, j: usize, k: usize) -> Result<BigRational, ModDataError> {
        let d = self.global_dim();
        let mut terms = Vec::with_capacity(self.rank());
        for m in 0..self.rank() {
            let den = &d * &self.s[0][m];
            let num = &(&self.s[i][m] * &self.s[j][m]) * &self.s[k][m].conj();
            terms.push(num.div_ref(&den)?);
        }
        let v = CycNumber::sum(terms.iter());
        v.to_rational().ok_or_else(|| ModDataError::Degenerate(format!("N_{{{i}{j}}}^{k} = {v} is not rational")))
    }

    /// ξ with τ_1 = ξ √D, √D positive under the identity embedding.
    pub fn central_charge(&self) -> Result<RootOfUnity, ModDataError> {
        Ok(self.central_charge_and_root()?.0)
    }

    /// √D = τ_1 / ξ as an exact cyclotomic number.
    pub fn sqrt_global_dim(&self) -> Result<CycNumber, ModDataError> {
        Ok(self.central_charge_and_root()?.1)
    }

    fn central_charge_and_root(&self) -> Result<(RootOfUnity, CycNumber), ModDataError> {
        let tau = self.gauss_sum(1);
        if tau.is_zero() {
            return Err(ModDataError::Degenerate("Gauss sum τ_1 vanishes".into()));
        }
        let d = self.global_dim();
        let rho = (&tau * &tau)
            .div_ref(&d)?
            .as_root_of_unity()
            .ok_or_else(|| ModDataError::Degenerate("τ_1^2 / D is not a root of unity".into()))?;
        let half = RootOfUnity::new(rho.numer() as i64, 2 * rho.denom());
        for xi in [half, half.mul(&RootOfUnity::minus_one())] {
            let root = &tau * &CycNumber::from_root(&xi.inv());
            if root.is_real() && root.real_sign() == std::cmp::Ordering::Greater {
                return Ok((xi, root));
            }
        }
        Err(ModDataError::Degenerate("τ_1 / √D is not a root of unity".into()))
    }

    /// s = S/√D and t = T/γ with γ the minimal-argument cube root of ξ.
    pub fn normalized(&self) -> Result<NormalizedData, ModDataError> {
        let (xi, sqrt_d) = self.central_charge_and_root()?;
        let gamma = xi.min_cube_root();
        let inv = sqrt_d.inv()?;
        let s = self.s.iter().map(|row| row.iter().map(|x| x * &inv).collect()).collect();
        let t: Vec<RootOfUnity> = self.t.iter().map(|x| x.div(&gamma)).collect();
        let n = t.iter().fold(1, |n, x| lcm_u64(n, x.order()));
        Ok(NormalizedData { s, t, gamma, xi, sqrt_d, n })
    }

    /// Distinct twists, ordered by argument.
    pub fn twist_set(&self) -> BTreeSet<RootOfUnity> {
        self.t.iter().copied().collect()
    }

    pub fn twist_spectrum(&self) -> TwistSpectrum {
        let mut entries: BTreeMap<RootOfUnity, CycNumber> = BTreeMap::new();
        for (d, t) in self.dims().iter().zip(&self.t) {
            let sq = d * d;
            let e = entries.entry(*t).or_insert_with(CycNumber::zero);
            *e = &*e + &sq;
        }
        TwistSpectrum { entries }
    }

    /// Deligne product: Kronecker product of S, pointwise product of T. Index (i, j) ↦ i·r2 + j.
    pub fn product(&self, other: &ModularData) -> ModularData {
        let (r1, r2) = (self.rank(), other.rank());
        let mut s = vec![Vec::with_capacity(r1 * r2); r1 * r2];
        for i in 0..r1 {
            for j in 0..r2 {
                let row = &mut s[i * r2 + j];
                for k in 0..r1 {
                    for l in 0..r2 {
                        row.push(&self.s[i][k] * &other.s[j][l]);
                    }
                }
            }
        }
        let t = self.t.iter().flat_map(|a| other.t.iter().map(move |b| a.mul(b))).collect();
        ModularData { s, t }
    }

    /// Apply zeta ↦ zeta^k to every entry of S and T.
    pub fn galois_conjugate(&self, k: i64) -> Result<ModularData, ModDataError> {
        let n = self.conductor();
        if num_integer::Integer::gcd(&k, &(n as i64)) != 1 {
            return Err(ModDataError::NotCoprime { k, n });
        }
        let s = self.s.iter().map(|row| row.iter().map(|x| x.galois(k)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
        Ok(ModularData { s, t: self.t.iter().map(|x| x.galois(k)).collect() })
    }

    /// Simultaneously permute simples: new index i carries old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<ModularData, ModDataError> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(ModDataError::Malformed("not a permutation".into()));
        }
        let s = perm.iter().map(|&a| perm.iter().map(|&b| self.s[a][b].clone()).collect()).collect();
        Ok(ModularData { s, t: perm.iter().map(|&a| self.t[a]).collect() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ModDataError> {
        serde_json::from_str(text).map_err(|e| ModDataError::Json(e.to_string()))
    }
}

impl std::fmt::Debug for ModularData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ModularData(rank {})", self.rank())?;
        for row in &self.s {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        let ts: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(f, "  T = ({})", ts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    rank: usize,
    conductor: u64,
    #[serde(rename = "S")]
    s: Vec<Vec<CycNumber>>,
    #[serde(rename = "T")]
    t: Vec<RootOfUnity>,
}

impl Serialize for ModularData {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        Wire { rank: self.rank(), conductor: self.conductor(), s: self.s.clone(), t: self.t.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ModularData {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(de)?;
        if w.rank != w.s.len() {
            return Err(D::Error::custom(format!("rank {} but S has {} rows", w.rank, w.s.len())));
        }
        let md = ModularData::new(w.s, w.t).map_err(D::Error::custom)?;
        let n = md.conductor();
        if w.conductor == 0 || w.conductor % n != 0 {
            return Err(D::Error::custom(format!("declared conductor {} is not a multiple of {n}", w.conductor)));
        }
        Ok(md)
    }
}

/// D_ζ = Σ_{θ_X = ζ} dim(X)^2 for each twist ζ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpectrum {
    pub entries: BTreeMap<RootOfUnity, CycNumber>,
}

impl TwistSpectrum {
    pub fn get(&self, z: &RootOfUnity) -> Option<&CycNumber> {
        self.entries.get(z)
    }

    pub fn total(&self) -> CycNumber {
        CycNumber::sum(self.entries.values())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Spectrum of a product: D_ζ = Σ_{αβ = ζ} D_α D_β.
    pub fn convolve(&self, other: &TwistSpectrum) -> TwistSpectrum {
        let mut entries: BTreeMap<RootOfUnity, CycNumber> = BTreeMap::new();
        for (a, da) in &self.entries {
            for (b, db) in &other.entries {
                let e = entries.entry(a.mul(b)).or_insert_with(CycNumber::zero);
                *e = &*e + &(da * db);
            }
        }
        TwistSpectrum { entries }
    }
}

impl Serialize for TwistSpectrum {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            twist: &'a RootOfUnity,
            dim: &'a CycNumber,
        }
        let v: Vec<Entry> = self.entries.iter().map(|(twist, dim)| Entry { twist, dim }).collect();
        v.serialize(ser)
    }
}

/// Normalized data (s, t) with the conventions used to produce it.
#[derive(Clone, Debug)]
pub struct NormalizedData {
    pub s: Vec<Vec<CycNumber>>,
    pub t: Vec<RootOfUnity>,
    pub gamma: RootOfUnity,
    pub xi: RootOfUnity,
    pub sqrt_d: CycNumber,
    /// Order of t.
    pub n: u64,
}
