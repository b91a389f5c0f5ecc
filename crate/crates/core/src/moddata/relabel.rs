//! Equality of modular data up to a relabeling of simples.
//!
//! Entries are interned to small ids, simples are colored by iterated
//! refinement of (twist, row multiset), and a backtracking search matches
//! colors while checking every assigned pair.

use std::collections::HashMap;

use super::ModularData;
use crate::exactnum::{CycNumber, RootOfUnity};

fn intern_rows<'a>(m: &'a ModularData, ids: &mut HashMap<&'a CycNumber, u32>) -> Vec<Vec<u32>> {
    m.s()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let next = ids.len() as u32;
                    *ids.entry(x).or_insert(next)
                })
                .collect()
        })
        .collect()
}

fn histogram(colors: &[u32]) -> Vec<(u32, usize)> {
    let mut h: HashMap<u32, usize> = HashMap::new();
    for c in colors {
        *h.entry(*c).or_default() += 1;
    }
    let mut v: Vec<_> = h.into_iter().collect();
    v.sort_unstable();
    v
}

/// Colors stable under refinement, computed jointly so equal colors are comparable across both inputs.
fn refine(a: &[Vec<u32>], b: &[Vec<u32>], ta: &[RootOfUnity], tb: &[RootOfUnity]) -> Option<(Vec<u32>, Vec<u32>)> {
    let r = a.len();
    let mut keys: HashMap<(u64, u64, u32, bool), u32> = HashMap::new();
    let mut init = |m: &[Vec<u32>], t: &[RootOfUnity]| -> Vec<u32> {
        (0..r)
            .map(|i| {
                let next = keys.len() as u32;
                *keys.entry((t[i].numer(), t[i].denom(), m[i][i], i == 0)).or_insert(next)
            })
            .collect()
    };
    let mut ca = init(a, ta);
    let mut cb = init(b, tb);
    loop {
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        let classes = histogram(&ca).len();
        let mut table: HashMap<(u32, Vec<(u32, u32)>), u32> = HashMap::new();
        let mut step = |m: &[Vec<u32>], c: &[u32]| -> Vec<u32> {
            (0..r)
                .map(|i| {
                    let mut sig: Vec<(u32, u32)> = (0..r).map(|j| (m[i][j], c[j])).collect();
                    sig.sort_unstable();
                    let next = table.len() as u32;
                    *table.entry((c[i], sig)).or_insert(next)
                })
                .collect()
        };
        let na = step(a, &ca);
        let nb = step(b, &cb);
        ca = na;
        cb = nb;
        if histogram(&ca).len() == classes {
            return (histogram(&ca) == histogram(&cb)).then_some((ca, cb));
        }
    }
}

struct Search<'a> {
    a: &'a [Vec<u32>],
    b: &'a [Vec<u32>],
    ca: &'a [u32],
    cb: &'a [u32],
    order: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn go(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for y in 0..self.b.len() {
            if self.used[y] || self.cb[y] != self.ca[i] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&i2| self.a[i][i2] == self.b[y][self.perm[i2]])
                && self.a[i][i] == self.b[y][y];
            if !consistent {
                continue;
            }
            self.perm[i] = y;
            self.used[y] = true;
            if self.go(depth + 1) {
                return true;
            }
            self.used[y] = false;
        }
        false
    }
}

/// A permutation p with a.S[i][j] = b.S[p(i)][p(j)], a.T[i] = b.T[p(i)] and p(0) = 0.
pub fn relabeling(a: &ModularData, b: &ModularData) -> Option<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return None;
    }
    let mut ids = HashMap::new();
    let ia = intern_rows(a, &mut ids);
    let ib = intern_rows(b, &mut ids);
    let (ca, cb) = refine(&ia, &ib, a.t(), b.t())?;
    let sizes = histogram(&ca).into_iter().collect::<HashMap<u32, usize>>();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| (i != 0, sizes[&ca[i]], ca[i], i));
    let mut search = Search { a: &ia, b: &ib, ca: &ca, cb: &cb, order, perm: vec![0; r], used: vec![false; r] };
    search.go(0).then_some(search.perm)
}

pub fn equal_up_to_relabeling(a: &ModularData, b: &ModularData) -> bool {
    relabeling(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moddata::fixture;

    #[test]
    fn permuted_fixture_is_found() {
        let md = fixture("double_c2x3_rank22").unwrap();
        let mut perm: Vec<usize> = (0..22).collect();
        perm[1..].reverse();
        let shuffled = md.permuted(&perm).unwrap();
        let p = relabeling(&shuffled, &md).unwrap();
        for i in 0..22 {
            for j in 0..22 {
                assert_eq!(shuffled.s_entry(i, j), md.s_entry(p[i], p[j]));
            }
        }
        let other = fixture("pointed_rank16").unwrap();
        assert!(relabeling(&md, &other).is_none());
    }
}
