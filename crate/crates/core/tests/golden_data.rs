use std::collections::BTreeMap;

use twistbench::exactnum::{CycNumber, RootOfUnity};
use twistbench::metricgrp::{abelian_groups_of_order, FiniteAbelianGroup};
use twistbench::moddata::{equal_up_to_relabeling, fixture, fixture_names, validate, ModularData};
use twistbench::twistdbl::{classify_doubles_by_twistcount, enumerate_cocycle_classes, twisted_double};

fn z4(k: i64) -> RootOfUnity {
    RootOfUnity::new(k, 4)
}

fn spectrum(md: &ModularData) -> BTreeMap<RootOfUnity, CycNumber> {
    md.twist_spectrum().entries.into_iter().collect()
}

#[test]
fn rank22_double_passes_every_check() {
    let md = fixture("double_c2x3_rank22").unwrap();
    let r = validate(&md);
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(md.rank(), 22);
    assert_eq!(md.fs_exponent(), 4);
    assert_eq!(md.global_dim(), CycNumber::from_int(64));
    assert_eq!(md.central_charge().unwrap(), RootOfUnity::one());
    let expect = BTreeMap::from([
        (RootOfUnity::one(), CycNumber::from_int(8)),
        (z4(1), CycNumber::from_int(28)),
        (z4(3), CycNumber::from_int(28)),
    ]);
    assert_eq!(spectrum(&md), expect);
    assert_eq!(r.summary(), "22 simples, N=4, ξ=1, D=64, all checks pass");
}

#[test]
fn rank22_counts_by_hand() {
    // eight invertibles with twist 1, fourteen dimension-2 objects with twist ±i
    let md = fixture("double_c2x3_rank22").unwrap();
    let ones = (0..22).filter(|&x| md.dim(x) == &CycNumber::from_int(1)).count();
    let twos = (0..22).filter(|&x| md.dim(x) == &CycNumber::from_int(2)).count();
    assert_eq!((ones, twos), (8, 14));
    for x in 0..22 {
        let t = md.twist(x);
        if md.dim(x) == &CycNumber::from_int(1) {
            assert!(t.is_one());
        } else {
            assert!(t == z4(1) || t == z4(3));
        }
    }
}

#[test]
fn pointed_examples_pass_and_have_three_twists() {
    for (name, rank) in [("pointed_rank4", 4), ("pointed_rank16", 16)] {
        let md = fixture(name).unwrap();
        assert!(validate(&md).passed(), "{name}");
        assert_eq!(md.rank(), rank);
        assert_eq!(md.twist_set(), [RootOfUnity::one(), z4(1), z4(3)].into_iter().collect(), "{name}");
        assert_eq!(md.global_dim(), CycNumber::from_int(rank as i64));
    }
}

fn doubles_matching(md: &ModularData, order: u64) -> Vec<String> {
    let mut out = Vec::new();
    for g in abelian_groups_of_order(order) {
        for (i, w) in enumerate_cocycle_classes(&g).unwrap().iter().enumerate() {
            let d = twisted_double(w).unwrap();
            if equal_up_to_relabeling(&d.data, md) {
                out.push(format!("{g} #{i}"));
            }
        }
    }
    out
}

#[test]
fn rank16_example_is_a_double_of_an_order_four_group() {
    let md = fixture("pointed_rank16").unwrap();
    let hits = doubles_matching(&md, 4);
    assert!(!hits.is_empty());
}

#[test]
fn rank4_example_is_the_double_of_c2() {
    let md = fixture("pointed_rank4").unwrap();
    assert_eq!(doubles_matching(&md, 2), vec!["C_2 #1".to_string()]);
}

#[test]
fn unique_three_twist_double_of_c2_cubed() {
    let groups: Vec<FiniteAbelianGroup> =
        ["2", "2,2", "4", "2,2,2"].iter().map(|s| FiniteAbelianGroup::parse(s).unwrap()).collect();
    let rows = classify_doubles_by_twistcount(&groups, 3).unwrap();
    let three: Vec<_> = rows.iter().filter(|r| r.twists.len() == 3).collect();
    let on_c2_cubed: Vec<_> = three.iter().filter(|r| r.group.order() == 8).collect();
    assert_eq!(on_c2_cubed.len(), 1);
    let w = twistbench::twistdbl::cocycle_by_index(&groups[3], on_c2_cubed[0].omega_index).unwrap();
    let d = twisted_double(&w).unwrap();
    assert!(equal_up_to_relabeling(&d.data, &fixture("double_c2x3_rank22").unwrap()));
    // the smaller groups give the two pointed examples and nothing else
    for r in three.iter().filter(|r| r.group.order() < 8) {
        let w = twistbench::twistdbl::cocycle_by_index(&r.group, r.omega_index).unwrap();
        let d = twisted_double(&w).unwrap();
        let matches = ["pointed_rank4", "pointed_rank16"]
            .iter()
            .any(|n| d.data.twist_set() == fixture(n).unwrap().twist_set() && d.data.rank() == fixture(n).unwrap().rank());
        assert!(matches, "{} #{}", r.group, r.omega_index);
    }
}

#[test]
fn fixtures_round_trip_through_json() {
    for name in fixture_names() {
        let md = fixture(name).unwrap();
        let text = md.to_json();
        let back = ModularData::from_json(&text).unwrap();
        assert_eq!(back, md, "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
}

#[test]
fn checked_in_fixtures_match_builtins() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for name in fixture_names() {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(ModularData::from_json(&text).unwrap(), fixture(name).unwrap(), "{name}");
    }
}
