//! Data whose nontrivial twists have pairwise coprime orders has exactly two twists
//! (or one), and then it is one of the two-twist rows or the N = 2 family.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use super::rows::ClassRow;
use super::solve_two_twists;
use crate::exactnum::arith::gcd_u64;
use crate::exactnum::RootOfUnity;
use crate::moddata::{equal_up_to_relabeling, ModularData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum CoprimeTag {
    /// A single twist: the data is trivial.
    Trivial,
    /// Two twists, matched to a table row (or the N = 2 family).
    TwoTwist { row: String },
    /// Some pair of nontrivial twists has orders with a common factor.
    NotApplicable,
    /// Coprime twist orders but no admissible match.
    Violation { reason: String },
}

fn two_twist_rows() -> &'static [ClassRow] {
    static ROWS: OnceLock<Vec<ClassRow>> = OnceLock::new();
    ROWS.get_or_init(|| solve_two_twists().map(|r| r.rows).unwrap_or_default())
}

fn is_power_of_four(d: &BigInt) -> bool {
    let mut d = d.clone();
    let four = BigInt::from(4);
    if d <= BigInt::from(1) {
        return false;
    }
    while &d % &four == BigInt::from(0) {
        d /= &four;
    }
    d == BigInt::from(1)
}

/// Classify `md` when its nontrivial twists have pairwise coprime orders.
pub fn coprime_twist_check(md: &ModularData) -> CoprimeTag {
    let twists: Vec<RootOfUnity> = md.twist_set().into_iter().filter(|t| !t.is_one()).collect();
    for (i, a) in twists.iter().enumerate() {
        for b in &twists[i + 1..] {
            if gcd_u64(a.order(), b.order()) != 1 {
                return CoprimeTag::NotApplicable;
            }
        }
    }
    match twists.len() {
        0 => {
            if md.rank() == 1 {
                CoprimeTag::Trivial
            } else {
                CoprimeTag::Violation { reason: format!("rank {} with every twist 1", md.rank()) }
            }
        }
        1 => {
            if twists[0] == RootOfUnity::minus_one() {
                return match md.global_dim().to_integer() {
                    Some(d) if is_power_of_four(&d) => CoprimeTag::TwoTwist { row: "N = 2 family".into() },
                    _ => CoprimeTag::Violation { reason: "twists {1, −1} but D is not a power of 4".into() },
                };
            }
            two_twist_rows()
                .iter()
                .find(|row| row.members.iter().any(|m| equal_up_to_relabeling(m, md)))
                .map(|row| CoprimeTag::TwoTwist { row: row.name.clone() })
                .unwrap_or_else(|| CoprimeTag::Violation {
                    reason: format!("twists {{1, {}}} match no two-twist row", twists[0]),
                })
        }
        k => CoprimeTag::Violation { reason: format!("{} distinct twists of pairwise coprime order", k + 1) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricgrp::{metric_groups_of_order, metric_modular_data};
    use crate::moddata::{fibonacci, pointed_cyclic};

    #[test]
    fn fibonacci_matches_row() {
        let tag = coprime_twist_check(&fibonacci(3).unwrap());
        assert_eq!(tag, CoprimeTag::TwoTwist { row: "C(sl2,5,q)_ad".into() });
    }

    #[test]
    fn trivial_and_products() {
        assert_eq!(coprime_twist_check(&ModularData::trivial()), CoprimeTag::Trivial);
        let p = pointed_cyclic(2, 1).unwrap().product(&pointed_cyclic(3, 1).unwrap());
        assert_eq!(coprime_twist_check(&p), CoprimeTag::NotApplicable);
    }

    #[test]
    fn order_four_family() {
        for q in metric_groups_of_order(4).unwrap() {
            let md = metric_modular_data(&q);
            assert!(!matches!(coprime_twist_check(&md), CoprimeTag::Violation { .. }), "{q}");
        }
    }
}
