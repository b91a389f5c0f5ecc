use std::sync::OnceLock;

use twistbench::classify::{
    compare_rows, solve_three_twists, solve_two_twists, CaseStatus, Evidence, ThreeTwistReport, TwoTwistReport,
    PER_N_REFERENCE, THREE_TWIST_REFERENCE, TWO_TWIST_REFERENCE,
};
use twistbench::exactnum::{CycNumber, QuadFieldElement};
use twistbench::moddata::{equal_up_to_relabeling, fibonacci, fixture, fixture_names, validate, ModularData};
use num_rational::BigRational;

fn two() -> &'static TwoTwistReport {
    static R: OnceLock<TwoTwistReport> = OnceLock::new();
    R.get_or_init(|| solve_two_twists().unwrap())
}

fn three() -> &'static ThreeTwistReport {
    static R: OnceLock<ThreeTwistReport> = OnceLock::new();
    R.get_or_init(|| solve_three_twists().unwrap())
}

fn golden_ratio_dim(a: i64, b: i64) -> CycNumber {
    // (a + b√5)/2
    let half = |n: i64| BigRational::new(n.into(), 2.into());
    QuadFieldElement::new(5, half(a), half(b)).unwrap().to_cyc()
}

#[test]
fn two_twist_rows() {
    let r = two();
    let got: Vec<(&str, usize)> = r.rows.iter().map(|row| (row.name.as_str(), row.classes)).collect();
    assert_eq!(got, vec![("C(C2,q)", 2), ("C(C3,q)", 2), ("C(sl2,5,q)_ad", 4)]);
    let dims: Vec<&CycNumber> = r.rows.iter().map(|row| &row.fpdim_value).collect();
    assert_eq!(dims, vec![&CycNumber::from_int(2), &CycNumber::from_int(3), &golden_ratio_dim(5, 1)]);
    assert!(compare_rows(&r.rows, TWO_TWIST_REFERENCE).iter().all(|c| c.agrees()));
}

#[test]
fn two_twist_exponent_two_is_the_family() {
    let c = two().cases.iter().find(|c| c.n == 2).unwrap();
    assert_eq!(c.status, CaseStatus::InfiniteFamily);
    assert!(c.certificates.iter().any(|x| x.claim.contains("2^(2m)")));
}

#[test]
fn two_twist_emptiness_certificates() {
    let empty = [6u64, 8, 10, 12, 15, 16, 20, 24, 30, 40, 48, 60, 80, 120];
    for n in empty {
        let c = two().cases.iter().find(|c| c.n == n).unwrap_or_else(|| panic!("N={n} missing"));
        assert_eq!(c.status, CaseStatus::Empty, "N={n}");
        assert!(!c.certificates.is_empty(), "N={n}");
        assert!(c.certificates.iter().any(|x| x.evidence == Evidence::Computed), "N={n}");
    }
    for c in &two().cases {
        if !empty.contains(&c.n) {
            assert!([2, 3, 4, 5].contains(&c.n), "N={}", c.n);
        }
    }
}

#[test]
fn every_recheckable_certificate_rechecks() {
    let certs = two()
        .cases
        .iter()
        .flat_map(|c| &c.certificates)
        .chain(three().cases.iter().flat_map(|c| &c.certificates))
        .chain(&three().scope);
    let mut checked = 0;
    for c in certs {
        if let Some(ok) = c.recheck() {
            assert!(ok, "{}", c.claim);
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn row_members_are_distinct_valid_data() {
    for row in two().rows.iter().chain(&three().rows) {
        assert_eq!(row.members.len(), row.classes, "{}", row.name);
        for (i, m) in row.members.iter().enumerate() {
            assert!(validate(m).passed(), "{}", row.name);
            for other in &row.members[i + 1..] {
                assert!(!equal_up_to_relabeling(m, other), "{}", row.name);
            }
        }
    }
}

#[test]
fn three_twist_listed_rows_agree() {
    let cmp = compare_rows(&three().rows, THREE_TWIST_REFERENCE);
    for c in cmp.iter().filter(|c| c.reference_classes.is_some()) {
        assert!(c.agrees(), "{c:?}");
    }
    let counts: Vec<usize> = THREE_TWIST_REFERENCE
        .iter()
        .map(|r| three().rows.iter().find(|row| row.name == r.name).unwrap().classes)
        .collect();
    assert_eq!(counts, vec![1, 6, 8, 2, 2, 6, 1, 1]);
}

#[test]
fn three_twist_exponent_three_is_the_family() {
    let fam: Vec<_> = three().cases.iter().filter(|c| c.n == 3).collect();
    assert!(!fam.is_empty());
    assert!(fam.iter().all(|c| c.status == CaseStatus::InfiniteFamily));
}

/// Products Fib(a) ⊠ Fib(b) with exactly three distinct twists, split by whether θ_b = θ_a⁻¹.
fn fibonacci_products() -> (Vec<ModularData>, Vec<ModularData>) {
    let fibs: Vec<ModularData> = [1, 3, 7, 9].iter().map(|&a| fibonacci(a).unwrap()).collect();
    let (mut inverse, mut same) = (Vec::new(), Vec::new());
    for i in 0..4 {
        for j in i..4 {
            let p = fibs[i].product(&fibs[j]);
            if p.twist_set().len() != 3 {
                continue;
            }
            if fibs[i].twist(1).mul(&fibs[j].twist(1)).is_one() {
                inverse.push(p);
            } else {
                same.push(p);
            }
        }
    }
    (inverse, same)
}

#[test]
fn unlisted_row_is_fibonacci_squared() {
    let extra: Vec<_> = three().rows.iter().filter(|r| !r.in_reference_table).collect();
    assert_eq!(extra.len(), 1);
    let row = extra[0];
    assert_eq!(row.name, "C(sl2,5,q)_ad⊠C(sl2,5,q)_ad");
    let (inverse, same) = fibonacci_products();
    assert_eq!(inverse.len(), 2);
    assert_eq!(same.len(), 4);
    assert_eq!(row.classes, same.len());
    for p in &same {
        assert!(validate(p).passed());
        assert_eq!(p.fs_exponent(), 5);
        assert!(row.members.iter().any(|m| equal_up_to_relabeling(m, p)));
    }
    assert_eq!(row.fpdim_value, golden_ratio_dim(15, 5));
}

#[test]
fn per_exponent_counts() {
    for (n, reference) in PER_N_REFERENCE {
        let got = three().per_n.iter().find(|p| p.n == *n).unwrap();
        assert_eq!(got.reference, *reference);
        if *n == 5 {
            // the four Fibonacci squares sit on top of the published four
            assert_eq!(got.count, Some(8));
        } else {
            assert_eq!(got.count, *reference, "N={n}");
        }
    }
}

#[test]
fn fixtures_with_few_twists_are_classified() {
    let members: Vec<&ModularData> = two().rows.iter().chain(&three().rows).flat_map(|r| &r.members).collect();
    for name in fixture_names() {
        let md = fixture(name).unwrap();
        let k = md.twist_set().len();
        let family = (k == 2 && md.fs_exponent() == 2) || (k == 3 && md.fs_exponent() == 3);
        if k > 3 || family {
            continue;
        }
        assert!(members.iter().any(|m| equal_up_to_relabeling(m, &md)), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = serde_json::to_string(&solve_two_twists().unwrap()).unwrap();
    assert_eq!(a, serde_json::to_string(two()).unwrap());
    let b = serde_json::to_string(&solve_three_twists().unwrap()).unwrap();
    assert_eq!(b, serde_json::to_string(three()).unwrap());
}
