//! The small complex `(A (x) A(z_1, z), D)` computing the Hochschild
//! cohomology of a truncated polynomial algebra `A = Q[x]/(x^{N+1})`,
//! `|x| = 2`, built directly without the loop model.
//!
//! `z_1` is odd of upper degree `-1`, `z` is even of upper degree `-2N`,
//! `D z = 0` and `D z_1 = (N+1) x^N z`. The word length of `x^a z_1^e z^j`
//! is `e + j`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::scalar::int;
use crate::linalg::{CochainComplex, SparseMatrix, SparseVec};

/// A basis element `x^a z_1^e z^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Term {
    a: i32,
    e: i32,
    j: i32,
}

/// Cohomology of the small complex, in total and per word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallComplexReport {
    pub top: i32,
    pub betti: BTreeMap<i32, usize>,
    pub hodge: BTreeMap<u32, BTreeMap<i32, usize>>,
}

/// Hochschild cohomology of `Q[x]/(x^{N+1})` with `N = n + k`, on `lo..=hi`.
pub fn cp_small_complex_oracle(n: i32, k: i32, lo: i32, hi: i32) -> Result<SmallComplexReport> {
    if n < 1 || k < 0 {
        return Err(Error::Hypothesis(format!("need n >= 1 and k >= 0, got n = {n}, k = {k}")));
    }
    let top = n + k;
    let degree = |t: &Term| 2 * t.a - t.e - 2 * top * t.j;
    // all terms with degree in [lo - 1, hi + 1]; the lowest degree of word
    // length i is at least -1 - 2 top i
    let max_len = ((2 * top - (lo - 1)) / (2 * top)).max(0) + 1;
    let mut betti: BTreeMap<i32, usize> = (lo..=hi).map(|d| (d, 0)).collect();
    let mut hodge = BTreeMap::new();
    for len in 0..=max_len {
        let mut terms: BTreeMap<i32, Vec<Term>> = (lo - 1..=hi + 1).map(|d| (d, Vec::new())).collect();
        for e in 0..=1.min(len) {
            for a in 0..=top {
                let t = Term { a, e, j: len - e };
                if let Some(v) = terms.get_mut(&degree(&t)) {
                    v.push(t);
                }
            }
        }
        let dims = terms.iter().map(|(d, v)| (*d, v.len())).collect();
        let mut diffs = BTreeMap::new();
        for d in lo - 1..=hi {
            let src = &terms[&d];
            let tgt = &terms[&(d + 1)];
            let cols: Vec<SparseVec> = src
                .iter()
                .map(|t| {
                    // D(x^a z_1 z^j) = (N+1) x^{a+N} z^{j+1}, nonzero only for a = 0
                    if t.e == 1 && t.a == 0 {
                        let image = Term { a: top, e: 0, j: t.j + 1 };
                        let i = tgt.iter().position(|u| *u == image).expect("image in the next degree");
                        SparseVec::from_entries(vec![(i, int((top + 1) as i64))])
                    } else {
                        SparseVec::new()
                    }
                })
                .collect();
            diffs.insert(d, SparseMatrix::from_columns(tgt.len(), &cols));
        }
        let c = CochainComplex::new(lo - 1, hi + 1, dims, diffs)?;
        let mut piece = BTreeMap::new();
        for d in lo..=hi {
            let b = c.cohomology(d)?.betti;
            if b > 0 {
                piece.insert(d, b);
                *betti.get_mut(&d).expect("degree in window") += b;
            }
        }
        if !piece.is_empty() {
            hodge.insert(len as u32, piece);
        }
    }
    Ok(SmallComplexReport { top, betti, hodge })
}
