use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::HochschildComplex;
use super::module::CoefficientModule;
use crate::cdga::{AlgebraMorphism, Element};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{induced_matrix, induced_rank, SparseMatrix, SparseVec};
use crate::poincare::{DualityData, Shriek};

/// A linear map `theta : M^p -> N^{p+t}` between coefficient modules, given
/// by its matrices per source degree.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    degree: i32,
    matrices: BTreeMap<i32, SparseMatrix>,
    source: Arc<CoefficientModule>,
    target: Arc<CoefficientModule>,
}

impl ModuleMap {
    pub fn new(
        source: Arc<CoefficientModule>,
        target: Arc<CoefficientModule>,
        degree: i32,
        matrices: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self> {
        for (p, m) in &matrices {
            if m.cols() != source.dim(*p) || m.rows() != target.dim(p + degree) {
                return Err(Error::Dimension(format!(
                    "module map matrix in degree {p} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(p + degree),
                    source.dim(*p)
                )));
            }
        }
        Ok(ModuleMap { degree, matrices, source, target })
    }

    pub fn identity(m: Arc<CoefficientModule>) -> Self {
        let (lo, hi) = m.range();
        let matrices = (lo..=hi).map(|p| (p, SparseMatrix::identity(m.dim(p)))).collect();
        ModuleMap { degree: 0, matrices, source: m.clone(), target: m }
    }

    /// The algebra morphism `f : A -> B` as a map of modules.
    pub fn from_morphism(
        f: &AlgebraMorphism,
        source: Arc<CoefficientModule>,
        target: Arc<CoefficientModule>,
    ) -> Result<Self> {
        check_carrier(&source, f.source())?;
        check_carrier(&target, f.target())?;
        let (lo, hi) = source.range();
        ModuleMap::new(source, target, 0, (lo..=hi).map(|p| (p, f.matrix(p))).collect())
    }

    /// `f_! : B -> A` of degree `m - n`.
    pub fn from_shriek(
        s: &Shriek,
        source: Arc<CoefficientModule>,
        target: Arc<CoefficientModule>,
    ) -> Result<Self> {
        check_carrier(&source, s.morphism().target())?;
        check_carrier(&target, s.morphism().source())?;
        let (lo, hi) = source.range();
        ModuleMap::new(source, target, s.shift(), (lo..=hi).map(|p| (p, s.matrix(p))).collect())
    }

    /// Left multiplication by a homogeneous element of an algebra module.
    pub fn left_mult(m: Arc<CoefficientModule>, alpha: &Element) -> Result<Self> {
        let a = m.algebra()?.clone();
        let t = a.degree_of(alpha)?.unwrap_or(0);
        let (lo, hi) = m.range();
        let matrices = (lo..=hi)
            .map(|p| Ok((p, a.left_mult_matrix_to(alpha, p, p + t)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ModuleMap::new(m.clone(), m, t, matrices)
    }

    /// `pi_A : A -> A^#`, `pi_A(a)(x) = epsilon(a x)`, of degree `-n`.
    pub fn pi(dd: &DualityData, source: Arc<CoefficientModule>, target: Arc<CoefficientModule>) -> Result<Self> {
        check_carrier(&source, dd.algebra())?;
        let n = dd.formal_dim();
        let matrices = (0..=n).map(|p| (p, dd.pi_matrix(p))).collect();
        ModuleMap::new(source, target, -n, matrices)
    }

    /// `pi_A^{-1} : A^# -> A`, of degree `n`.
    pub fn pi_inverse(
        dd: &DualityData,
        source: Arc<CoefficientModule>,
        target: Arc<CoefficientModule>,
    ) -> Result<Self> {
        check_carrier(&target, dd.algebra())?;
        let n = dd.formal_dim();
        let matrices = (0..=n).map(|p| (p - n, dd.pi_inverse_matrix(p))).collect();
        ModuleMap::new(source, target, n, matrices)
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> &Arc<CoefficientModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CoefficientModule> {
        &self.target
    }

    pub fn matrix(&self, p: i32) -> SparseMatrix {
        self.matrices
            .get(&p)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.dim(p + self.degree), self.source.dim(p)))
    }

    /// Checks `theta(v m) = (-1)^{|v| t} v theta(m)` for the generators `v`
    /// and `d theta = (-1)^t theta d`.
    pub fn check(&self) -> Result<()> {
        let t = self.degree;
        let (lo, hi) = self.source.range();
        let base = self.source.base();
        for p in lo..=hi {
            for (i, g) in base.generators().iter().enumerate() {
                let lhs = self.matrix(p + g.degree).mul(&self.source.action(i, p))?;
                let rhs = self.target.action(i, p + t).mul(&self.matrix(p))?.scale(&sign((g.degree * t) as i64));
                if lhs != rhs {
                    return Err(Error::Hypothesis(format!(
                        "map {} -> {} is not linear over {} in degree {p}",
                        self.source.name(),
                        self.target.name(),
                        g.name
                    )));
                }
            }
            let lhs = self.target.differential(p + t).mul(&self.matrix(p))?;
            let rhs = self.matrix(p + 1).mul(&self.source.differential(p))?.scale(&sign(t as i64));
            if lhs != rhs {
                return Err(Error::Hypothesis(format!(
                    "map {} -> {} does not commute with the differentials in degree {p}",
                    self.source.name(),
                    self.target.name()
                )));
            }
        }
        Ok(())
    }
}

fn check_carrier(m: &CoefficientModule, a: &Arc<crate::cdga::DGAlgebra>) -> Result<()> {
    match m.algebra() {
        Ok(c) if Arc::ptr_eq(c, a) => Ok(()),
        _ => Err(Error::CarrierMismatch(format!("module {} is not carried by {}", m.name(), a.name()))),
    }
}

/// The cochain map `gamma -> theta o gamma` from `CH^k(M)` to `CH^{k+t}(N)`.
#[derive(Debug)]
pub struct InducedMap {
    degree: i32,
    source: Arc<HochschildComplex>,
    target: Arc<HochschildComplex>,
    matrices: BTreeMap<i32, SparseMatrix>,
}

impl InducedMap {
    /// Assembles the map on every source degree whose image degree is
    /// assembled in the target.
    pub fn new(theta: &ModuleMap, source: Arc<HochschildComplex>, target: Arc<HochschildComplex>) -> Result<Self> {
        if !Arc::ptr_eq(theta.source(), source.module()) || !Arc::ptr_eq(theta.target(), target.module()) {
            return Err(Error::CarrierMismatch("module map does not match the complexes".into()));
        }
        if !Arc::ptr_eq(source.loop_model(), target.loop_model()) {
            return Err(Error::CarrierMismatch("complexes over different loop models".into()));
        }
        theta.check()?;
        let t = theta.degree();
        let (slo, shi) = (source.window().0 - 1, source.window().1 + 1);
        let mut matrices = BTreeMap::new();
        for k in slo..=shi {
            if !target.has_degree(k + t) {
                continue;
            }
            let mut cols = vec![SparseVec::new(); source.dim(k)];
            for b in source.blocks(k) {
                let tb = target.block_of(k + t, &b.word);
                let m = theta.matrix(b.value_degree);
                for j in 0..b.len {
                    let v = m.column(j);
                    if v.is_zero() {
                        continue;
                    }
                    let tb = tb.ok_or_else(|| {
                        Error::Invariant(format!("induced map leaves the assembled target in degree {}", k + t))
                    })?;
                    cols[b.offset + j] = v.reindex(|i| Some(tb.offset + i));
                }
            }
            matrices.insert(k, SparseMatrix::from_columns(target.dim(k + t), &cols));
        }
        let map = InducedMap { degree: t, source, target, matrices };
        map.check_chain()?;
        Ok(map)
    }

    /// `alpha . gamma`, pointwise left multiplication of values.
    pub fn multiply_by_class(hc: Arc<HochschildComplex>, alpha: &Element) -> Result<Self> {
        let a = hc.module().algebra()?.clone();
        if !a.d(alpha).is_zero() {
            return Err(Error::Hypothesis(format!("{} is not a cocycle", a.format(alpha))));
        }
        let theta = ModuleMap::left_mult(hc.module().clone(), alpha)?;
        InducedMap::new(&theta, hc.clone(), hc)
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> &Arc<HochschildComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HochschildComplex> {
        &self.target
    }

    pub fn matrix(&self, k: i32) -> Option<&SparseMatrix> {
        self.matrices.get(&k)
    }

    /// Degrees of the source where the map is assembled.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.matrices.keys().copied()
    }

    /// `D theta_* = (-1)^t theta_* D` wherever both sides are assembled.
    pub fn check_chain(&self) -> Result<()> {
        let s = sign(self.degree as i64);
        for (&k, m) in &self.matrices {
            let (Some(next), Ok(ds), Ok(dt)) = (
                self.matrices.get(&(k + 1)),
                self.source.differential(k),
                self.target.differential(k + self.degree),
            ) else {
                continue;
            };
            if dt.mul(m)? != next.mul(ds)?.scale(&s) {
                return Err(Error::Invariant(format!("induced map is not a chain map in degree {k}")));
            }
        }
        Ok(())
    }

    /// `other o self`.
    pub fn then(&self, other: &InducedMap) -> Result<InducedMap> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(Error::CarrierMismatch("composition of non-composable induced maps".into()));
        }
        let mut matrices = BTreeMap::new();
        for (&k, m) in &self.matrices {
            if let Some(n) = other.matrices.get(&(k + self.degree)) {
                matrices.insert(k, n.mul(m)?);
            }
        }
        Ok(InducedMap {
            degree: self.degree + other.degree,
            source: self.source.clone(),
            target: other.target.clone(),
            matrices,
        })
    }

    /// Rank of the map on cohomology in source degree `k`, which must lie in
    /// the windows of both complexes.
    pub fn rank_on_cohomology(&self, k: i32) -> Result<usize> {
        let m = self.matrix(k).ok_or_else(|| Error::Dimension(format!("induced map not assembled in degree {k}")))?;
        Ok(induced_rank(&self.source.cohomology(k)?, m, &self.target.cohomology(k + self.degree)?))
    }

    /// Matrix of the map on cohomology in the representative bases.
    pub fn on_cohomology(&self, k: i32) -> Result<SparseMatrix> {
        let m = self.matrix(k).ok_or_else(|| Error::Dimension(format!("induced map not assembled in degree {k}")))?;
        induced_matrix(&self.source.cohomology(k)?, m, &self.target.cohomology(k + self.degree)?)
    }
}
