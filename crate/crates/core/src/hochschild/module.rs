use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cdga::{AlgebraMorphism, DGAlgebra, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{SparseMatrix, SparseVec};

/// A bounded differential graded module over a Sullivan algebra `AV`,
/// stored as per-degree dimensions, differential matrices and the action
/// matrices of each generator of `V`.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    name: String,
    lo: i32,
    hi: i32,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, SparseMatrix>,
    actions: Vec<BTreeMap<i32, SparseMatrix>>,
    base: Arc<DGAlgebra>,
    carrier: Option<Arc<AlgebraMorphism>>,
    dual: bool,
}

impl CoefficientModule {
    /// The module `M` over `AV` obtained by restricting scalars along
    /// `rho : AV -> M` for a finite-dimensional algebra `M`.
    pub fn from_morphism(rho: Arc<AlgebraMorphism>) -> Result<Self> {
        let m = rho.target().clone();
        let hi = m.top_degree().ok_or_else(|| {
            Error::Unbounded(format!("coefficient algebra {} is not finite-dimensional", m.name()))
        })?;
        let lo = 0;
        let dims = (lo..=hi).map(|p| (p, m.dim(p))).collect();
        let diffs = (lo..hi).map(|p| (p, m.differential_matrix(p))).collect();
        let base = rho.source().clone();
        let actions = (0..base.n_generators())
            .map(|i| {
                let a = &rho.images()[i];
                let da = base.generators()[i].degree;
                (lo..=hi - da)
                    .map(|p| Ok((p, m.left_mult_matrix_to(a, p, p + da)?)))
                    .collect::<Result<BTreeMap<_, _>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoefficientModule {
            name: m.name().to_string(),
            lo,
            hi,
            dims,
            diffs,
            actions,
            base,
            carrier: Some(rho),
            dual: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Lowest and highest degree that may be nonzero.
    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn dim(&self, p: i32) -> usize {
        self.dims.get(&p).copied().unwrap_or(0)
    }

    pub fn base(&self) -> &Arc<DGAlgebra> {
        &self.base
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The morphism `rho : AV -> M` when the module is an algebra.
    pub fn carrier(&self) -> Option<&Arc<AlgebraMorphism>> {
        self.carrier.as_ref()
    }

    /// Carrier algebra, or an error for dual modules.
    pub fn algebra(&self) -> Result<&Arc<DGAlgebra>> {
        self.carrier
            .as_ref()
            .map(|r| r.target())
            .ok_or_else(|| Error::CarrierMismatch(format!("{} is not an algebra", self.name)))
    }

    /// Matrix of `d : M^p -> M^{p+1}`.
    pub fn differential(&self, p: i32) -> SparseMatrix {
        self.diffs.get(&p).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(p + 1), self.dim(p)))
    }

    /// Matrix of the action of generator `i` from degree `p`.
    pub fn action(&self, i: usize, p: i32) -> SparseMatrix {
        let q = p + self.base.generators()[i].degree;
        self.actions[i].get(&p).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(q), self.dim(p)))
    }

    /// `a . v` for a base monomial `a` and a vector `v` of degree `p`.
    pub fn act_monomial(&self, a: &Monomial, p: i32, v: &SparseVec) -> SparseVec {
        let mut deg = p;
        let mut out = v.clone();
        for &g in a.word().iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.action(g, deg).mul_vec(&out);
            deg += self.base.generators()[g].degree;
        }
        out
    }

    /// `a . v` for a homogeneous element `a` of the base algebra.
    pub fn act(&self, a: &Element, p: i32, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (m, c) in a.terms() {
            out = out.axpy(c, &self.act_monomial(m, p, v));
        }
        out
    }

    /// The dual module `M^#` with `(M^#)^{-p} = (M^p)^*`,
    /// `d(phi) = -(-1)^{|phi|} phi d` and `(a phi)(x) = (-1)^{|a||phi|} phi(a x)`.
    pub fn dual(&self) -> CoefficientModule {
        let (lo, hi) = (-self.hi, -self.lo);
        let dims = (lo..=hi).map(|q| (q, self.dim(-q))).collect();
        let diffs = (lo..hi)
            .map(|q| (q, self.differential(-q - 1).transpose().scale(&-sign(q as i64))))
            .collect();
        let actions = (0..self.base.n_generators())
            .map(|i| {
                let da = self.base.generators()[i].degree;
                (lo..=hi - da)
                    .map(|q| (q, self.action(i, -q - da).transpose().scale(&sign((da * q) as i64))))
                    .collect()
            })
            .collect();
        let name = if self.dual {
            self.name.trim_end_matches('#').to_string()
        } else {
            format!("{}#", self.name)
        };
        CoefficientModule { name, lo, hi, dims, diffs, actions, base: self.base.clone(), carrier: None, dual: !self.dual }
    }

    /// Checks `d^2 = 0`, graded commutativity of the action and the Leibniz
    /// rule `d(v m) = (dv) m + (-1)^{|v|} v dm` on generators.
    pub fn check(&self) -> Result<()> {
        for p in self.lo..self.hi {
            if !self.differential(p + 1).mul(&self.differential(p))?.is_zero() {
                return Err(Error::Invariant(format!("{}: d^2 != 0 in degree {p}", self.name)));
            }
        }
        let gens = self.base.generators();
        for (i, g) in gens.iter().enumerate() {
            let dv = self.base.differential_of(i);
            for p in self.lo..=self.hi {
                let q = p + g.degree;
                let lhs = self.differential(q).mul(&self.action(i, p))?;
                let mut rhs = self.action(i, p + 1).mul(&self.differential(p))?.scale(&sign(g.degree as i64));
                let dv_cols: Vec<SparseVec> = (0..self.dim(p)).map(|j| self.act(dv, p, &SparseVec::unit(j))).collect();
                rhs = rhs.add(&SparseMatrix::from_columns(self.dim(q + 1), &dv_cols))?;
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "{}: the action of {} is not compatible with d in degree {p}",
                        self.name, g.name
                    )));
                }
                for (j, h) in gens.iter().enumerate() {
                    let vw = self.action(i, p + h.degree).mul(&self.action(j, p))?;
                    let wv = self.action(j, p + g.degree).mul(&self.action(i, p))?;
                    if vw != wv.scale(&sign((g.degree * h.degree) as i64)) {
                        return Err(Error::Invariant(format!(
                            "{}: the actions of {} and {} do not graded-commute in degree {p}",
                            self.name, g.name, h.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl DGAlgebra {
    /// Matrix of `b -> a b` from degree `p` to degree `q`, for an element
    /// `a` of degree `q - p` (or zero).
    pub fn left_mult_matrix_to(&self, a: &Element, p: i32, q: i32) -> Result<SparseMatrix> {
        self.matrix_of(p, self, q, |m| self.mul(a, &Element::monomial(m.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::AlgebraKind;

    fn cp2_module() -> CoefficientModule {
        let v = Arc::new(
            DGAlgebra::from_strings("v", &[("x", 2), ("y", 5)], &[], &[("y", "x^3")], Some(AlgebraKind::Sullivan))
                .unwrap(),
        );
        let a = Arc::new(DGAlgebra::from_strings("cp2", &[("x", 2)], &["x^3"], &[], None).unwrap());
        let rho = AlgebraMorphism::from_strings(v, a, &[("x", "x")]).unwrap();
        CoefficientModule::from_morphism(Arc::new(rho)).unwrap()
    }

    fn s3_module() -> CoefficientModule {
        let v = Arc::new(DGAlgebra::from_strings("v", &[("u", 3)], &[], &[], Some(AlgebraKind::Sullivan)).unwrap());
        let a = Arc::new(DGAlgebra::from_strings("s3", &[("x", 3)], &[], &[], None).unwrap());
        let rho = AlgebraMorphism::from_strings(v, a, &[("u", "x")]).unwrap();
        CoefficientModule::from_morphism(Arc::new(rho)).unwrap()
    }

    #[test]
    fn module_and_dual_are_valid() {
        for m in [cp2_module(), s3_module()] {
            m.check().unwrap();
            let d = m.dual();
            assert_eq!(d.range(), (-m.range().1, 0));
            d.check().unwrap();
        }
    }

    #[test]
    fn double_dual_is_koszul_twisted() {
        for m in [cp2_module(), s3_module()] {
            let dd = m.dual().dual();
            let (lo, hi) = m.range();
            for p in lo..hi {
                assert_eq!(dd.differential(p), m.differential(p).scale(&-sign(0)));
            }
            for i in 0..m.base().n_generators() {
                let da = m.base().generators()[i].degree;
                for p in lo..=hi {
                    assert_eq!(dd.action(i, p), m.action(i, p).scale(&sign(da as i64)));
                }
            }
        }
    }
}
