//! Oracles shared by the integration tests. None of them use the library's
//! linear algebra.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use kgrid::homology_ingest::BifilteredComplex;

/// Rank over F_p by enumerating every linear combination of the rows and
/// counting the distinct results: the span has `p^rank` elements.
pub fn brute_rank_fp(rows: &[Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut span = BTreeSet::new();
    let combos = p.pow(rows.len() as u32);
    for code in 0..combos {
        let mut c = code;
        let mut v = vec![0u64; cols];
        for row in rows {
            let coef = c % p;
            c /= p;
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + coef * r) % p;
            }
        }
        span.insert(v);
    }
    let mut rank = 0;
    let mut size = 1;
    while size < span.len() {
        size *= p as usize;
        rank += 1;
    }
    rank
}

/// Rank of a set of F_2 vectors packed into bit masks.
pub fn f2_rank(vectors: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn below(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `dim H_k` over F_2 at grid point `p`: `n_k - rank d_k - rank d_{k+1}`,
/// with boundary columns as bit masks over the `(k-1)`-simplices.
pub fn f2_betti(complex: &BifilteredComplex, k: usize, p: &[usize]) -> usize {
    let present: Vec<&Vec<usize>> = complex
        .simplices()
        .iter()
        .filter(|s| below(&s.grade, p))
        .map(|s| &s.verts)
        .collect();
    let of_dim = |d: usize| -> Vec<&Vec<usize>> { present.iter().copied().filter(|s| s.len() == d + 1).collect() };
    let boundary_rank = |d: usize| -> usize {
        if d == 0 {
            return 0;
        }
        let faces: BTreeMap<&Vec<usize>, usize> = of_dim(d - 1).into_iter().enumerate().map(|(i, f)| (f, i)).collect();
        let columns: Vec<u128> = of_dim(d)
            .into_iter()
            .map(|s| {
                (0..s.len()).fold(0u128, |mask, drop| {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &v)| v).collect();
                    mask | (1u128 << faces[&face])
                })
            })
            .collect();
        f2_rank(&columns)
    };
    of_dim(k).len() - boundary_rank(k) - boundary_rank(k + 1)
}
