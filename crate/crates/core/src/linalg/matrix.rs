use std::fmt;

use num::{One, Zero};

use super::scalar::{format_scalar, Scalar};
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Sparse matrix over the rationals, stored by rows. Column `j` of a map's
/// matrix holds the coordinates of the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.support_bound() <= cols));
        Self { rows: data.len(), cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter() {
                assert!(i < rows, "column entry {i} out of range {rows}");
                raw[i].push((j, x.clone()));
            }
        }
        Self {
            rows,
            cols: columns.len(),
            data: raw.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn from_dense(values: &[Vec<Scalar>]) -> Self {
        let cols = values.first().map(|r| r.len()).unwrap_or(0);
        Self::from_rows(cols, values.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_i64(values: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = values
            .iter()
            .map(|r| r.iter().map(|x| super::scalar::int(*x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.get(j);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        )
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        t.data
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter() {
                raw[j].push((i, x.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: raw.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    fn check_same_shape(&self, other: &SparseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert!(v.support_bound() <= self.cols, "vector longer than matrix width");
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        )
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc = SparseVec::new();
                for (k, x) in r.iter() {
                    acc = acc.axpy(x, &other.data[k]);
                }
                acc
            })
            .collect();
        Ok(Self { rows: self.rows, cols: other.cols, data })
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut col_map = vec![None; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = Some(new);
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data: rows.iter().map(|&i| self.data[i].reindex(|j| col_map[j])).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let shift = self.cols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut e: Vec<(usize, Scalar)> = a.entries().to_vec();
                e.extend(b.iter().map(|(j, x)| (j + shift, x.clone())));
                SparseVec::from_entries(e)
            })
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(format_scalar).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A list of linearly independent vectors in a fixed ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: (0..ambient_dim).map(SparseVec::unit).collect() }
    }

    /// Keeps an independent subset spanning the same space.
    pub fn spanned_by(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = EchelonBasis::new(ambient_dim);
        let kept = vectors.into_iter().filter(|v| ech.insert(v)).collect();
        Self { ambient_dim, vectors: kept }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut ech = EchelonBasis::new(self.ambient_dim);
        for b in &self.vectors {
            ech.insert(b);
        }
        ech.reduce(v).is_zero()
    }
}

/// Incrementally maintained echelon form used for independence and
/// membership tests. Stored vectors have distinct leading indices and a
/// leading coefficient of one.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    ambient_dim: usize,
    rows: std::collections::BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new(ambient_dim: usize) -> Self {
        Self { ambient_dim, rows: Default::default() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (&p, row) in &self.rows {
            let c = r.get(p);
            if !c.is_zero() {
                r = r.axpy(&-c, row);
            }
        }
        r
    }

    /// Adds `v` if it is independent of the stored rows; reports whether it was.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((p, lead)) => {
                let inv = Scalar::one() / lead;
                let r = r.scale(&inv);
                self.rows.insert(p, r);
                true
            }
        }
    }
}

/// Reduced row-echelon form and pivot columns.
///
/// Columns are scanned left to right; among the candidate rows for a pivot
/// the one with the fewest nonzeros wins (ties go to the lower row index),
/// which keeps fill-in down and makes the result reproducible.
pub fn rref(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let mut rows: Vec<SparseVec> = m.data.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut done = 0usize;
    for col in 0..m.cols {
        if done == rows.len() {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in rows.iter().enumerate().skip(done) {
            if !r.get(col).is_zero() {
                let n = r.nnz();
                if best.is_none_or(|(_, bn)| n < bn) {
                    best = Some((i, n));
                }
            }
        }
        let Some((pi, _)) = best else { continue };
        rows.swap(done, pi);
        let inv = Scalar::one() / rows[done].get(col);
        rows[done] = rows[done].scale(&inv);
        let pivot_row = rows[done].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == done {
                continue;
            }
            let c = r.get(col);
            if !c.is_zero() {
                *r = r.axpy(&-c, &pivot_row);
            }
        }
        pivots.push(col);
        done += 1;
    }
    rows.truncate(done);
    rows.resize(m.rows, SparseVec::new());
    (SparseMatrix { rows: m.rows, cols: m.cols, data: rows }, pivots)
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> SubspaceBasis {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut e = vec![(f, Scalar::one())];
            for (ri, &p) in pivots.iter().enumerate() {
                let x = r.data[ri].get(f);
                if !x.is_zero() {
                    e.push((p, -x));
                }
            }
            SparseVec::from_entries(e)
        })
        .collect();
    SubspaceBasis { ambient_dim: m.cols, vectors }
}

/// Basis of the column space, taken from the pivot columns of `m`.
pub fn image_basis(m: &SparseMatrix) -> SubspaceBasis {
    let (_, pivots) = rref(m);
    SubspaceBasis { ambient_dim: m.rows, vectors: pivots.iter().map(|&j| m.column(j)).collect() }
}

/// Some `v` with `m v = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.support_bound() > m.rows {
        return Err(Error::Dimension(format!("right-hand side longer than {} rows", m.rows)));
    }
    let aug = m.hstack(&SparseMatrix::from_columns(m.rows, std::slice::from_ref(b)))?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let v = SparseVec::from_entries(
        pivots.iter().enumerate().map(|(ri, &p)| (p, r.data[ri].get(m.cols))).collect(),
    );
    Ok(Some(v))
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &SparseMatrix) -> Result<Option<SparseMatrix>> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("inverse of non-square {}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    let aug = m.hstack(&SparseMatrix::identity(n))?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
        return Ok(None);
    }
    let data = (0..n).map(|i| r.data[i].reindex(|j| (j >= n).then(|| j - n))).collect();
    Ok(Some(SparseMatrix { rows: n, cols: n, data }))
}

/// Dimension of `z / bd` together with representatives of a complement of
/// `bd` inside `z`, chosen greedily from the vectors of `z`.
pub fn quotient_dim_and_reps(
    z: &SubspaceBasis,
    bd: &SubspaceBasis,
) -> std::result::Result<(usize, Vec<SparseVec>), SparseVec> {
    let mut zech = EchelonBasis::new(z.ambient_dim);
    for v in &z.vectors {
        zech.insert(v);
    }
    if let Some(bad) = bd.vectors.iter().find(|v| !zech.reduce(v).is_zero()) {
        return Err(bad.clone());
    }
    let mut ech = EchelonBasis::new(z.ambient_dim);
    for v in &bd.vectors {
        ech.insert(v);
    }
    let reps: Vec<SparseVec> = z.vectors.iter().filter(|v| ech.insert(v)).cloned().collect();
    Ok((reps.len(), reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, SparseMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_and_permutation() {
        let id = SparseMatrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let (r, p) = rref(&SparseMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, SparseMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).dim(), 3);
        assert_eq!(kernel_basis(&SparseMatrix::identity(4)).dim(), 0);
        let k = kernel_basis(&SparseMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.vectors, vec![SparseVec::from_dense(&[int(-1), int(1)])]);
    }

    #[test]
    fn solve_examples() {
        let b = SparseVec::from_dense(&[int(3), int(-1), int(2)]);
        assert_eq!(solve(&SparseMatrix::identity(3), &b).unwrap(), Some(b.clone()));
        let m = SparseMatrix::from_i64(&[&[1, 1]]);
        let rhs = SparseVec::from_dense(&[int(2)]);
        let v = solve(&m, &rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&v), rhs);
        assert_eq!(v, SparseVec::from_dense(&[int(2), int(0)]));
        assert_eq!(solve(&SparseMatrix::zeros(1, 1), &SparseVec::unit(0)).unwrap(), None);
    }

    #[test]
    fn quotient_examples() {
        let full = SubspaceBasis::full(2);
        assert_eq!(quotient_dim_and_reps(&full, &SubspaceBasis::empty(2)).unwrap().0, 2);
        let (d, reps) = quotient_dim_and_reps(&full, &full).unwrap();
        assert_eq!((d, reps.len()), (0, 0));
        let diag = SubspaceBasis { ambient_dim: 2, vectors: vec![SparseVec::from_dense(&[int(1), int(1)])] };
        assert_eq!(quotient_dim_and_reps(&full, &diag).unwrap().0, 1);
        let line = SubspaceBasis { ambient_dim: 2, vectors: vec![SparseVec::unit(0)] };
        assert!(quotient_dim_and_reps(&line, &diag).is_err());
    }

    #[test]
    fn inverse_two_by_two() {
        let m = SparseMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), SparseMatrix::identity(2));
        assert_eq!(inverse(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]])).unwrap(), None);
    }
}
