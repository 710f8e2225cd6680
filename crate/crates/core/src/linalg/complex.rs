//! Finite windows of cochain complexes of rational vector spaces.

use std::collections::BTreeMap;

use super::matrix::{
    image_basis, kernel_basis, quotient_dim_and_reps, solve, EchelonBasis, SparseMatrix,
    SubspaceBasis,
};
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// A cochain complex restricted to degrees `lo..=hi`, with differentials
/// `d_k : C^k -> C^{k+1}` for `lo <= k < hi`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    lo: i32,
    hi: i32,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, SparseMatrix>,
}

/// Cohomology in one degree.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub betti: usize,
    /// Cocycles whose classes form a basis of the group.
    pub representatives: Vec<SparseVec>,
    pub cycles: SubspaceBasis,
    pub boundaries: SubspaceBasis,
}

impl CochainComplex {
    pub fn new(
        lo: i32,
        hi: i32,
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self> {
        for k in lo..=hi {
            if !dims.contains_key(&k) {
                return Err(Error::Dimension(format!("missing dimension for degree {k}")));
            }
        }
        for k in lo..hi {
            let d = diffs
                .get(&k)
                .ok_or_else(|| Error::Dimension(format!("missing differential in degree {k}")))?;
            if d.cols() != dims[&k] || d.rows() != dims[&(k + 1)] {
                return Err(Error::Dimension(format!(
                    "differential in degree {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[&(k + 1)],
                    dims[&k]
                )));
            }
        }
        Ok(Self { lo, hi, dims, diffs })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn differential(&self, k: i32) -> Option<&SparseMatrix> {
        self.diffs.get(&k)
    }

    /// Degrees `k` with `lo <= k < hi - 1` where `d_{k+1} d_k` is nonzero.
    pub fn square_defects(&self) -> Vec<i32> {
        (self.lo..self.hi - 1)
            .filter(|k| {
                let d0 = &self.diffs[k];
                let d1 = &self.diffs[&(k + 1)];
                !d1.mul(d0).map(|m| m.is_zero()).unwrap_or(false)
            })
            .collect()
    }

    /// Cohomology in degree `k`, for `lo < k < hi`.
    pub fn cohomology(&self, k: i32) -> Result<CohomologyGroup> {
        if k <= self.lo || k >= self.hi {
            return Err(Error::Dimension(format!(
                "degree {k} not interior to the assembled range [{}, {}]",
                self.lo, self.hi
            )));
        }
        let cycles = kernel_basis(&self.diffs[&k]);
        let boundaries = image_basis(&self.diffs[&(k - 1)]);
        let (betti, representatives) = quotient_dim_and_reps(&cycles, &boundaries)
            .map_err(|_| Error::BrokenComplex { degree: k })?;
        Ok(CohomologyGroup { degree: k, betti, representatives, cycles, boundaries })
    }

    /// Restriction to the basis indices selected per degree.
    pub fn subcomplex(&self, select: &BTreeMap<i32, Vec<usize>>) -> Result<CochainComplex> {
        let empty = Vec::new();
        let pick = |k: i32| select.get(&k).unwrap_or(&empty);
        let dims = (self.lo..=self.hi).map(|k| (k, pick(k).len())).collect();
        let diffs = (self.lo..self.hi)
            .map(|k| (k, self.diffs[&k].submatrix(pick(k + 1), pick(k))))
            .collect();
        CochainComplex::new(self.lo, self.hi, dims, diffs)
    }
}

impl CohomologyGroup {
    /// Whether `v` is a coboundary.
    pub fn is_coboundary(&self, v: &SparseVec) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of the class of a cocycle `v` in the representative basis.
    pub fn class_coordinates(&self, v: &SparseVec) -> Result<Option<SparseVec>> {
        let ambient = self.cycles.ambient_dim;
        let mut cols: Vec<SparseVec> = self.representatives.clone();
        cols.extend(self.boundaries.vectors.iter().cloned());
        let m = SparseMatrix::from_columns(ambient, &cols);
        Ok(solve(&m, v)?.map(|x| x.reindex(|i| (i < self.betti).then_some(i))))
    }
}

/// Rank of the map induced on cohomology by a chain map whose matrix in the
/// relevant degree is `map`, from `source` to `target`.
pub fn induced_rank(source: &CohomologyGroup, map: &SparseMatrix, target: &CohomologyGroup) -> usize {
    let mut ech = EchelonBasis::new(target.cycles.ambient_dim);
    for b in &target.boundaries.vectors {
        ech.insert(b);
    }
    source.representatives.iter().filter(|r| ech.insert(&map.mul_vec(r))).count()
}

/// Matrix of the induced map on cohomology in the representative bases.
pub fn induced_matrix(
    source: &CohomologyGroup,
    map: &SparseMatrix,
    target: &CohomologyGroup,
) -> Result<SparseMatrix> {
    let cols = source
        .representatives
        .iter()
        .map(|r| {
            target.class_coordinates(&map.mul_vec(r))?.ok_or_else(|| {
                Error::Invariant(format!(
                    "image of a cocycle in degree {} is not a cocycle",
                    source.degree
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(target.betti, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(d: SparseMatrix) -> CochainComplex {
        let (n0, n1) = (d.cols(), d.rows());
        let dims = BTreeMap::from([(-1, 0), (0, n0), (1, n1), (2, 0)]);
        let diffs = BTreeMap::from([
            (-1, SparseMatrix::zeros(n0, 0)),
            (0, d),
            (1, SparseMatrix::zeros(0, n1)),
        ]);
        CochainComplex::new(-1, 2, dims, diffs).unwrap()
    }

    #[test]
    fn betti_of_two_term_complex() {
        let c = two_term(SparseMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(c.cohomology(0).unwrap().betti, 1);
        assert_eq!(c.cohomology(1).unwrap().betti, 0);
    }

    #[test]
    fn broken_complex_detected() {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 0)]);
        let diffs = BTreeMap::from([
            (0, SparseMatrix::identity(1)),
            (1, SparseMatrix::identity(1)),
            (2, SparseMatrix::zeros(0, 1)),
        ]);
        let c = CochainComplex::new(0, 3, dims, diffs).unwrap();
        assert_eq!(c.square_defects(), vec![0]);
        assert_eq!(c.cohomology(1).unwrap_err(), Error::BrokenComplex { degree: 1 });
    }
}
