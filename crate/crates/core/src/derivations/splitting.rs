use std::collections::BTreeMap;

use num::{One, Zero};

use crate::cdga::Element;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Scalar, SparseMatrix, SubspaceBasis};
use crate::poincare::{degree_scalar, Shriek};

/// `B = f(A) + Z` with `Z = ker p` for the retraction `p = f_! / c`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub degree_scalar: Scalar,
    /// Matrices of `p : B^k -> A^k`.
    pub projection: BTreeMap<i32, SparseMatrix>,
    /// Bases of `Z^k` in coordinates of `B^k`.
    pub complement: BTreeMap<i32, SubspaceBasis>,
    pub checks: SplittingChecks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingChecks {
    pub direct_sum: bool,
    pub complement_closed_under_d: bool,
    pub complement_is_submodule: bool,
    pub retraction: bool,
    pub projection_linear: bool,
    pub projection_chain_map: bool,
}

impl SplittingChecks {
    pub fn all(&self) -> bool {
        self.direct_sum
            && self.complement_closed_under_d
            && self.complement_is_submodule
            && self.retraction
            && self.projection_linear
            && self.projection_chain_map
    }
}

impl Splitting {
    pub fn complement_dims(&self) -> BTreeMap<i32, usize> {
        self.complement.iter().map(|(k, z)| (*k, z.dim())).collect()
    }
}

/// Splits `B` along `f` using `p = f_! / c`, where `f_!(1) = c`, and checks
/// every property the retraction argument relies on.
pub fn compute_splitting(shriek: &Shriek) -> Result<Splitting> {
    let c = degree_scalar(shriek)?;
    if c.is_zero() {
        return Err(Error::Hypothesis("the morphism has degree zero; no splitting".into()));
    }
    let f = shriek.morphism();
    let a = f.source();
    let b = f.target();
    let m = shriek.source_duality().formal_dim();
    let inv = Scalar::one() / &c;
    let projection: BTreeMap<i32, SparseMatrix> = (0..=m).map(|k| (k, shriek.matrix(k).scale(&inv))).collect();
    let complement: BTreeMap<i32, SubspaceBasis> = projection.iter().map(|(k, p)| (*k, kernel_basis(p))).collect();

    let mut direct_sum = true;
    let mut retraction = true;
    for k in 0..=m {
        let fm = f.matrix(k);
        let z = &complement[&k];
        let stacked = fm.hstack(&SparseMatrix::from_columns(b.dim(k), &z.vectors))?;
        direct_sum &= a.dim(k) + z.dim() == b.dim(k) && stacked.rank() == b.dim(k);
        retraction &= projection[&k].mul(&fm)? == SparseMatrix::identity(a.dim(k));
    }

    let mut complement_closed_under_d = true;
    for k in 0..m {
        let d = b.differential_matrix(k);
        for z in &complement[&k].vectors {
            complement_closed_under_d &= complement[&(k + 1)].contains(&d.mul_vec(z));
        }
    }

    let mut complement_is_submodule = true;
    let mut projection_linear = true;
    for p in 0..=m {
        for x in a.basis(p).monomials.iter() {
            let fx = f.apply(&Element::monomial(x.clone()));
            for q in 0..=m - p {
                for z in &complement[&q].vectors {
                    let prod = b.mul(&fx, &b.from_coords(q, z));
                    complement_is_submodule &= complement[&(p + q)].contains(&b.coords(&prod, p + q)?);
                }
                for y in b.basis(q).monomials.iter() {
                    let prod = b.mul(&fx, &Element::monomial(y.clone()));
                    let lhs = projection[&(p + q)].mul_vec(&b.coords(&prod, p + q)?);
                    let py = a.from_coords(q, &projection[&q].column(b.basis(q).index_of(y).expect("basis")));
                    let rhs = a.coords(&a.mul(&Element::monomial(x.clone()), &py), p + q)?;
                    projection_linear &= lhs == rhs;
                }
            }
        }
    }

    let mut projection_chain_map = true;
    for k in 0..m {
        let lhs = a.differential_matrix(k).mul(&projection[&k])?;
        let rhs = projection[&(k + 1)].mul(&b.differential_matrix(k))?;
        projection_chain_map &= lhs == rhs;
    }

    Ok(Splitting {
        degree_scalar: c,
        projection,
        complement,
        checks: SplittingChecks {
            direct_sum,
            complement_closed_under_d,
            complement_is_submodule,
            retraction,
            projection_linear,
            projection_chain_map,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::example;
    use crate::linalg::scalar::ratio;

    fn split(name: &str) -> Splitting {
        compute_splitting(&example(name).unwrap().setup().unwrap().shriek).unwrap()
    }

    #[test]
    fn identity_splits_trivially() {
        let s = split("cp2_deg1");
        assert!(s.checks.all());
        assert!(s.complement_dims().values().all(|&d| d == 0));
        for (k, p) in &s.projection {
            assert_eq!(*p, SparseMatrix::identity(p.cols()), "degree {k}");
        }
    }

    #[test]
    fn three_sphere_degree_d() {
        for d in 1..=3 {
            let s = split(&format!("s3_deg{d}"));
            assert!(s.checks.all());
            assert_eq!(s.degree_scalar, Scalar::from_integer(d.into()));
            assert!(s.complement_dims().values().all(|&z| z == 0));
            // p = f_!/d: on degree 3 f_!(x) = x, so p(x) = x/d
            assert_eq!(s.projection[&3], SparseMatrix::from_dense(&[vec![ratio(1, d)]]));
        }
    }

    #[test]
    fn collapse_map_has_a_complement() {
        let s = split("s2xs4_to_s6_deg2");
        assert!(s.checks.all());
        let z = s.complement_dims();
        assert_eq!((z[&0], z[&2], z[&4], z[&6]), (0, 1, 1, 0));
    }

    #[test]
    fn zero_degree_rejected() {
        let setup = example("s3_deg0").unwrap().setup().unwrap();
        assert!(matches!(compute_splitting(&setup.shriek), Err(Error::Hypothesis(_))));
    }
}
