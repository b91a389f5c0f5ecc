//! Invariants over every metric group of order ≤ 16 and every abelian double of order ≤ 8.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twistbench::classify::{coprime_twist_check, CoprimeTag};
use twistbench::exactnum::arith::{gcd_u64, lcm_u64};
use twistbench::exactnum::{CycNumber, RootOfUnity};
use twistbench::metricgrp::{abelian_groups_of_order, metric_groups_of_order, metric_modular_data};
use twistbench::moddata::{galois_permutation, validate, ModularData};
use twistbench::twistdbl::{build_double, enumerate_cocycle_classes, TwistedDouble};

struct Corpus {
    metric: Vec<(String, ModularData)>,
    doubles: Vec<(String, TwistedDouble)>,
}

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| {
        let metric = (1..=16u64)
            .flat_map(|n| metric_groups_of_order(n).unwrap())
            .map(|q| (q.to_string(), metric_modular_data(&q)))
            .collect();
        let pairs: Vec<_> = (1..=8u64)
            .flat_map(abelian_groups_of_order)
            .flat_map(|g| enumerate_cocycle_classes(&g).unwrap().into_iter().enumerate().map(move |(i, w)| (g.clone(), i, w)))
            .collect();
        let doubles = pairs
            .into_par_iter()
            .map(|(g, i, w)| (format!("{g} ω#{i}"), build_double(&w).unwrap()))
            .collect();
        Corpus { metric, doubles }
    })
}

fn all_data() -> Vec<(&'static str, &'static ModularData)> {
    let c = corpus();
    c.metric
        .iter()
        .map(|(n, m)| (n.as_str(), m))
        .chain(c.doubles.iter().map(|(n, d)| (n.as_str(), &d.data)))
        .collect()
}

/// Σ dim(X)² θ_X^m straight from the first row of S and the twists.
fn gauss_by_hand(md: &ModularData, m: i64) -> CycNumber {
    let terms: Vec<CycNumber> = (0..md.rank())
        .map(|x| {
            let d = md.dim(x);
            &(d * d) * &CycNumber::from_root(&md.twist(x).pow(m))
        })
        .collect();
    CycNumber::sum(&terms)
}

#[test]
fn corpus_has_at_least_two_hundred_data() {
    let c = corpus();
    assert!(c.metric.len() + c.doubles.len() >= 200, "{} + {}", c.metric.len(), c.doubles.len());
    assert!(c.doubles.len() >= 128 + 8);
}

#[test]
fn every_datum_passes_validation() {
    let bad: Vec<String> = all_data()
        .par_iter()
        .filter_map(|(name, md)| {
            let r = validate(md);
            (!r.passed()).then(|| format!("{name}: {:?}", r.failures()))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn gauss_sums_multiply_to_global_dimension() {
    all_data().par_iter().for_each(|(name, md)| {
        let p = &gauss_by_hand(md, 1) * &gauss_by_hand(md, -1);
        let d: CycNumber = CycNumber::sum(&md.dims().iter().map(|x| x * x).collect::<Vec<_>>());
        assert_eq!(p, d, "{name}");
        assert_eq!(p, md.global_dim(), "{name}");
    });
}

#[test]
fn verlinde_coefficients_are_nonnegative_integers() {
    all_data().par_iter().enumerate().for_each(|(seed, (name, md))| {
        let r = md.rank();
        let triples: Vec<(usize, usize, usize)> = if r <= 8 {
            (0..r).flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k)))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
            (0..60).map(|_| (rng.gen_range(0..r), rng.gen_range(0..r), rng.gen_range(0..r))).collect()
        };
        for (i, j, k) in triples {
            let v: BigRational = md.verlinde(i, j, k).unwrap();
            assert!(v.is_integer() && !v.is_negative(), "{name}: N_{i},{j}^{k} = {v}");
        }
    });
}

fn units(n: u64) -> Vec<i64> {
    (1..n).filter(|&k| gcd_u64(k, n) == 1).map(|k| k as i64).collect()
}

#[test]
fn galois_permutations_satisfy_the_twist_relation() {
    all_data().par_iter().for_each(|(name, md)| {
        let nd = md.normalized().unwrap();
        let n = lcm_u64(md.conductor(), nd.n);
        for k in units(n) {
            let p = galois_permutation(md, k).unwrap_or_else(|e| panic!("{name} k={k}: {e}"));
            let mut seen = p.perm.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..md.rank()).collect::<Vec<_>>(), "{name}");
            let k2 = (k * k).rem_euclid(n as i64);
            for x in 0..md.rank() {
                assert_eq!(nd.t[p.perm[x]], nd.t[x].pow(k2), "{name} k={k} x={x}");
            }
            assert!(p.t_relation);
        }
    });
}

#[test]
fn zero_trace_holds_on_every_double() {
    corpus().doubles.par_iter().for_each(|(name, d)| {
        let order = d.group().order();
        for x in 1..order {
            // [Y : I(x)] = dim Y on sector x
            let terms: Vec<CycNumber> = d
                .simples
                .iter()
                .enumerate()
                .filter(|(_, s)| s.sector == x)
                .map(|(y, s)| {
                    let c = CycNumber::from_int((s.dim * s.dim) as i64);
                    &c * &CycNumber::from_root(&d.data.twist(y))
                })
                .collect();
            assert!(CycNumber::sum(&terms).is_zero(), "{name} x={x}");
        }
        assert!(d.trace_tests().zero_trace.iter().all(|c| c.passed), "{name}");
    });
}

#[test]
fn no_coprime_three_twist_configuration() {
    for (name, md) in all_data() {
        let twists = md.twist_set();
        if twists.len() > 3 {
            continue;
        }
        let tag = coprime_twist_check(md);
        assert!(!matches!(tag, CoprimeTag::Violation { .. }), "{name}: {tag:?}");
        if twists.len() == 3 {
            assert_eq!(tag, CoprimeTag::NotApplicable, "{name}");
        }
    }
}

fn small_form() -> impl Strategy<Value = ModularData> {
    (1..=6u64, any::<prop::sample::Index>()).prop_map(|(n, ix)| {
        let forms = metric_groups_of_order(n).unwrap();
        metric_modular_data(ix.get(&forms))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_of_metric_groups_stay_modular(a in small_form(), b in small_form()) {
        let p = a.product(&b);
        prop_assert!(validate(&p).passed());
        prop_assert_eq!(&gauss_by_hand(&p, 1) * &gauss_by_hand(&p, -1), p.global_dim());
        prop_assert_eq!(p.global_dim(), &a.global_dim() * &b.global_dim());
    }

    #[test]
    fn galois_conjugate_data_is_modular(a in small_form(), k in 1i64..60) {
        let n = a.conductor() as i64;
        prop_assume!(gcd_u64(k as u64, n as u64) == 1);
        let c = a.galois_conjugate(k).unwrap();
        prop_assert!(validate(&c).passed());
        let expect: Vec<RootOfUnity> = a.t().iter().map(|t| t.pow(k)).collect();
        prop_assert_eq!(c.t(), expect.as_slice());
    }
}
