//! Tables of small SL(2, Z/n)-representations and the twist sets they allow.
//!
//! Representations are kept as descriptors (name, level, dimension,
//! t-spectrum); no matrices are built.

mod reps;
mod twists;

use thiserror::Error;

use crate::exactnum::RootOfUnity;

pub use reps::{
    admissible_sums, rep_table, row_counts, tensor_with_char, twisted_classes, AdmissibleSum, RepDescriptor,
};
pub use twists::{
    twist_candidates, TwistCandidate, TwistTableRow, LEVEL12, LEVEL8_THREE_EIGENVALUES, LEVEL8_TWO_EIGENVALUES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("level {level} is not coprime to the order {char_order} of the character")]
    NotCoprime { level: u64, char_order: u64 },
    #[error("{0} has no tabulated spectrum")]
    External(String),
    #[error("bad token {0:?}")]
    Parse(String),
}

/// A product of root tokens joined by `*`: root-of-unity tokens plus `w` = ζ_3 and `wi` = ζ_3².
/// A leading `-` negates the product.
pub fn parse_product(s: &str) -> Result<RootOfUnity, Sl2Error> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if !rest.is_empty() && rest != "1" => (true, rest),
        _ => (false, s),
    };
    let mut r = RootOfUnity::one();
    for part in body.split('*') {
        let f = match part.trim() {
            "w" => RootOfUnity::new(1, 3),
            "wi" => RootOfUnity::new(2, 3),
            p => p.parse().map_err(|_| Sl2Error::Parse(s.to_string()))?,
        };
        r = r.mul(&f);
    }
    Ok(if neg { r.mul(&RootOfUnity::minus_one()) } else { r })
}

/// CSV dump of [`rep_table`]: name, level, dim, spectrum as `k/m` pairs.
pub fn rep_table_csv(max_distinct: usize) -> Result<String, Sl2Error> {
    let mut out = String::from("name,level,dim,spectrum\n");
    for d in rep_table(max_distinct)? {
        let spec = if d.external {
            "external".to_string()
        } else {
            d.t_spectrum.iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect::<Vec<_>>().join(" ")
        };
        out.push_str(&format!("\"{}\",{},{},{}\n", d.name, d.level, d.dim, spec));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(parse_product("w*z8^5").unwrap(), RootOfUnity::new(23, 24));
        assert_eq!(parse_product("-wi").unwrap(), RootOfUnity::new(1, 6));
        assert_eq!(parse_product("-1").unwrap(), RootOfUnity::minus_one());
        assert!(parse_product("q").is_err());
    }
}
