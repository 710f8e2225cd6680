use std::collections::BTreeMap;

use super::algebra::DGAlgebra;
use super::morphism::AlgebraMorphism;
use crate::error::Result;
use crate::linalg::{induced_rank, CochainComplex, CohomologyGroup};

/// The complex `(A, d)` on degrees `lo..=hi`.
pub fn cochain_window(a: &DGAlgebra, lo: i32, hi: i32) -> Result<CochainComplex> {
    let dims = (lo..=hi).map(|k| (k, a.dim(k))).collect();
    let diffs = (lo..hi).map(|k| (k, a.differential_matrix(k))).collect();
    CochainComplex::new(lo, hi, dims, diffs)
}

/// Cohomology groups of `A` in degrees `lo..=hi`.
pub fn cohomology(a: &DGAlgebra, lo: i32, hi: i32) -> Result<BTreeMap<i32, CohomologyGroup>> {
    let c = cochain_window(a, lo - 1, hi + 1)?;
    (lo..=hi).map(|k| Ok((k, c.cohomology(k)?))).collect()
}

pub fn betti_numbers(a: &DGAlgebra, lo: i32, hi: i32) -> Result<BTreeMap<i32, usize>> {
    Ok(cohomology(a, lo, hi)?.into_iter().map(|(k, h)| (k, h.betti)).collect())
}

/// Per-degree comparison of the map induced by `f` on cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    /// `(degree, betti of source, betti of target, rank of H(f))`.
    pub degrees: Vec<(i32, usize, usize, usize)>,
}

impl QuasiIsoReport {
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.degrees.iter().all(|&(_, s, t, r)| s == t && t == r)
    }
}

/// Checks whether `f` induces isomorphisms in cohomology in degrees `lo..=hi`.
pub fn verify_quasi_isomorphism(f: &AlgebraMorphism, lo: i32, hi: i32) -> Result<QuasiIsoReport> {
    let hs = cohomology(f.source(), lo, hi)?;
    let ht = cohomology(f.target(), lo, hi)?;
    let degrees = (lo..=hi)
        .map(|k| {
            let r = induced_rank(&hs[&k], &f.matrix(k), &ht[&k]);
            (k, hs[&k].betti, ht[&k].betti, r)
        })
        .collect();
    Ok(QuasiIsoReport { degrees })
}
