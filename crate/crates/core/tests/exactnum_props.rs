use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use twistbench::exactnum::{
    d_numbers_q5_in_window, galois_apply, is_d_number, q5_scan_windows, sqrt2_obstruction_scan, CycNumber,
    QuadFieldElement,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Group-ring element of Z[C_n]: coefficient per exponent, no reduction.
fn group_ring_to_cyc(n: u64, coeffs: &[i64]) -> CycNumber {
    let mut acc = CycNumber::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if *c != 0 {
            acc = &acc + &CycNumber::zeta(n, e as i64).scale(&q(*c));
        }
    }
    acc
}

fn group_ring_galois(n: u64, coeffs: &[i64], k: u64) -> Vec<i64> {
    let mut out = vec![0; n as usize];
    for (e, c) in coeffs.iter().enumerate() {
        out[(e as u64 * k % n) as usize] += c;
    }
    out
}

fn group_ring_mul(n: u64, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n as usize];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % n as usize] += x * y;
        }
    }
    out
}

#[test]
fn sqrt5_maps_to_minus_sqrt5() {
    let gr = [0, 1, -1, -1, 1];
    let x = group_ring_to_cyc(5, &gr);
    let image = galois_apply(&x, 2).unwrap();
    let oracle = group_ring_to_cyc(5, &group_ring_galois(5, &gr, 2));
    assert_eq!(image, oracle);
    assert_eq!(image, -&x);
    assert_eq!(&x * &x, CycNumber::from_int(5));
}

#[test]
fn zeta5_squared_under_k2() {
    assert_eq!(galois_apply(&CycNumber::zeta(5, 1), 2).unwrap(), CycNumber::zeta(5, 2));
    let x = CycNumber::zeta(5, 1);
    let s = &x + &galois_apply(&x, 4).unwrap();
    assert!(!s.is_rational());
    assert!(s.is_real());
}

#[test]
fn galois_identity_and_composition() {
    let x = &CycNumber::zeta(12, 1) + &CycNumber::zeta(12, 5).scale(&q(3));
    assert_eq!(galois_apply(&x, 1).unwrap(), x);
    let lhs = galois_apply(&galois_apply(&x, 5).unwrap(), 7).unwrap();
    assert_eq!(lhs, galois_apply(&x, 35 % 12).unwrap());
    assert!(galois_apply(&x, 4).is_err());
}

fn arb_group_ring() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>, u64)> {
    (1u64..=60).prop_flat_map(|n| {
        let units: Vec<u64> = (1..=n).filter(|k| num_integer::Integer::gcd(k, &n) == 1).collect();
        (
            Just(n),
            prop::collection::vec(-3i64..=3, n as usize),
            prop::collection::vec(-3i64..=3, n as usize),
            prop::sample::select(units),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, .. ProptestConfig::default() })]

    #[test]
    fn galois_is_ring_automorphism((n, a, b, k) in arb_group_ring()) {
        let x = group_ring_to_cyc(n, &a);
        let y = group_ring_to_cyc(n, &b);
        let kk = k as i64;
        let gx = galois_apply(&x, kk).unwrap();
        let gy = galois_apply(&y, kk).unwrap();
        prop_assert_eq!(galois_apply(&(&x + &y), kk).unwrap(), &gx + &gy);
        prop_assert_eq!(galois_apply(&(&x * &y), kk).unwrap(), &gx * &gy);
        // independent oracle: permuting group-ring exponents
        prop_assert_eq!(gx, group_ring_to_cyc(n, &group_ring_galois(n, &a, k)));
        prop_assert_eq!(&x * &y, group_ring_to_cyc(n, &group_ring_mul(n, &a, &b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, .. ProptestConfig::default() })]

    #[test]
    fn conductor_reduction_idempotent((n, a, _b, _k) in arb_group_ring(), mult in 1u64..=4) {
        let x = group_ring_to_cyc(n, &a);
        let big = x.conductor() * mult;
        let lifted = CycNumber::from_parts(big, x.numerators_in(big), x.denominator().clone()).unwrap();
        prop_assert_eq!(&lifted, &x);
        let again = CycNumber::from_parts(x.conductor(), x.numerators().to_vec(), x.denominator().clone()).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn json_roundtrip((n, a, _b, _k) in arb_group_ring(), den in 1i64..=9) {
        let x = group_ring_to_cyc(n, &a).scale(&BigRational::new(BigInt::one(), BigInt::from(den)));
        let s = serde_json::to_string(&x).unwrap();
        let y: CycNumber = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&y).unwrap(), s);
        prop_assert_eq!(y, x);
    }

    #[test]
    fn quad_trace_norm_match_cyclotomic(d in prop::sample::select(vec![2i64, 5]), a in -40i64..40, b in -40i64..40, c in 1i64..4) {
        let x = QuadFieldElement::from_ints(d, a, b, c);
        let cx = x.to_cyc();
        let r = QuadFieldElement::sqrt_d_cyc(d).unwrap();
        let sigma = if d == 2 { 3 } else { 2 };
        prop_assert_eq!(galois_apply(&r, sigma).unwrap(), -&r);
        let sx = galois_apply(&cx, sigma).unwrap();
        prop_assert_eq!(CycNumber::from_rational(&x.trace()), &cx + &sx);
        prop_assert_eq!(CycNumber::from_rational(&x.norm()), &cx * &sx);
    }
}

/// Unit-factorization characterization: x^2 / N(x) is an algebraic unit.
fn d_number_by_units(x: &QuadFieldElement) -> bool {
    if x.is_rational() {
        return true;
    }
    let sq = x.mul(x);
    let u = sq.scale(&x.norm().recip());
    u.is_integral() && (u.norm() == q(1) || u.norm() == q(-1))
}

#[test]
fn d_number_characterizations_agree() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut positives = 0;
    while checked < 200 {
        let d = if rng.gen_bool(0.5) { 2 } else { 5 };
        let (a, b, c) = if d == 5 && rng.gen_bool(0.5) {
            let a: i64 = rng.gen_range(-60..60);
            let b: i64 = rng.gen_range(-60..60);
            (2 * a + 1, 2 * b + 1, 2)
        } else {
            (rng.gen_range(-60..60), rng.gen_range(-60..60), 1)
        };
        let x = QuadFieldElement::from_ints(d, a, b, c);
        if x.is_zero() {
            continue;
        }
        let lhs = is_d_number(&x).unwrap();
        assert_eq!(lhs, d_number_by_units(&x), "{x}");
        positives += lhs as usize;
        checked += 1;
    }
    // include known d-numbers so both branches are exercised
    for x in [QuadFieldElement::from_ints(5, 5, 1, 2), QuadFieldElement::from_ints(5, 15, 5, 2)] {
        assert!(is_d_number(&x).unwrap() && d_number_by_units(&x));
    }
    assert!(positives < checked);
}

#[test]
fn q5_default_window_lists_five_numbers() {
    let got = d_numbers_q5_in_window(5, &q(1), &q(18));
    let expect = [
        QuadFieldElement::from_ints(5, 5, -1, 2),
        QuadFieldElement::from_ints(5, 5, 1, 2),
        QuadFieldElement::from_ints(5, 15, -5, 2),
        QuadFieldElement::from_ints(5, 5, 0, 1),
        QuadFieldElement::from_ints(5, 15, 5, 2),
    ];
    assert_eq!(got.len(), 5, "{got:?}");
    for e in &expect {
        assert!(got.contains(e), "missing {e}");
    }
}

#[test]
fn q5_windows_inside_published_bounds() {
    let published = [(5, -3, 9), (25, -6, 5), (125, -10, 2)];
    let ws = q5_scan_windows(5, &q(1), &q(18));
    assert_eq!(ws.len(), 3);
    for (w, (norm, lo, hi)) in ws.iter().zip(published) {
        assert_eq!(w.norm, norm);
        assert!(w.m_lo >= lo && w.m_hi <= hi, "{w:?}");
    }
}

#[test]
fn q5_narrow_windows() {
    // Oracle: evaluate both embeddings of the five default numbers.
    let five = d_numbers_q5_in_window(5, &q(1), &q(18));
    for (lo, hi) in [(1.0, 2.0), (0.0, 1.0), (1.0, 4.0), (3.0, 18.0)] {
        let oracle: Vec<_> = five
            .iter()
            .filter(|x| {
                let (e1, e2) = x.embeddings_f64();
                e1 > lo && e1 < hi && e2 > lo && e2 < hi
            })
            .cloned()
            .collect();
        let got = d_numbers_q5_in_window(5, &BigRational::from_float(lo).unwrap(), &BigRational::from_float(hi).unwrap());
        assert_eq!(got, oracle, "window ({lo}, {hi})");
    }
    assert!(d_numbers_q5_in_window(5, &q(1), &q(2)).is_empty());
    assert!(d_numbers_q5_in_window(5, &BigRational::zero(), &q(1)).is_empty());
}

#[test]
fn sqrt2_scan_is_empty() {
    assert!(sqrt2_obstruction_scan(12, 20).is_empty());
}

#[test]
fn totally_geq_examples() {
    assert!(QuadFieldElement::from_ints(2, 3, 1, 1).is_totally_geq(&q(1)));
    assert!(!QuadFieldElement::from_ints(2, 1, 1, 1).is_totally_geq(&q(1)));
    assert!(QuadFieldElement::from_ints(5, 5, 0, 1).is_totally_geq(&q(5)));
}
