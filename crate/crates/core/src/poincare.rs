//! Poincare duality structures on finite-dimensional algebras: orientation,
//! dual bases, the duality map `pi_A : A -> A^#` and shriek maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::cdga::{cochain_window, AlgebraMorphism, DGAlgebra, Element};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{image_basis, inverse, kernel_basis, solve, EchelonBasis, Scalar, SparseMatrix, SparseVec};

/// An orientation `epsilon : A^n -> Q` on a finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct PdStructure {
    algebra: Arc<DGAlgebra>,
    formal_dim: i32,
    orientation: SparseVec,
}

/// Per-degree ranks of the pairing `A^k x A^{n-k} -> Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub formal_dim: i32,
    pub pairing_ranks: Vec<(i32, usize)>,
}

impl PdStructure {
    /// `orientation` lists the values of epsilon on the basis of the top degree.
    pub fn new(algebra: Arc<DGAlgebra>, orientation: Vec<Scalar>) -> Result<Self> {
        let n = algebra.top_degree().ok_or_else(|| {
            Error::Unbounded(format!("{} is not finite-dimensional; no orientation possible", algebra.name()))
        })?;
        if orientation.len() != algebra.dim(n) {
            return Err(Error::InvalidPd {
                degree: n,
                reason: format!("{} orientation values for a {}-dimensional top degree", orientation.len(), algebra.dim(n)),
            });
        }
        Ok(PdStructure { algebra, formal_dim: n, orientation: SparseVec::from_dense(&orientation) })
    }

    /// Orientation taking `value` on the basis monomial `volume` and zero on the
    /// other top-degree monomials.
    pub fn from_volume(algebra: Arc<DGAlgebra>, volume: &Element, value: Scalar) -> Result<Self> {
        let n = algebra.top_degree().ok_or_else(|| {
            Error::Unbounded(format!("{} is not finite-dimensional; no orientation possible", algebra.name()))
        })?;
        let coords = algebra.coords(volume, n).map_err(|_| Error::InvalidPd {
            degree: n,
            reason: format!("volume element {} is not of top degree", algebra.format(volume)),
        })?;
        if coords.nnz() != 1 || !coords.entries()[0].1.is_one() {
            return Err(Error::InvalidPd {
                degree: n,
                reason: format!("volume element {} is not a basis monomial", algebra.format(volume)),
            });
        }
        let mut values = vec![Scalar::zero(); algebra.dim(n)];
        values[coords.entries()[0].0] = value;
        PdStructure::new(algebra, values)
    }

    /// Orientation with value one on the last top-degree basis monomial.
    pub fn with_default_orientation(algebra: Arc<DGAlgebra>) -> Result<Self> {
        let n = algebra.top_degree().ok_or_else(|| {
            Error::Unbounded(format!("{} is not finite-dimensional; no orientation possible", algebra.name()))
        })?;
        let mut values = vec![Scalar::zero(); algebra.dim(n)];
        if let Some(last) = values.last_mut() {
            *last = Scalar::one();
        }
        PdStructure::new(algebra, values)
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra> {
        &self.algebra
    }

    pub fn formal_dim(&self) -> i32 {
        self.formal_dim
    }

    pub fn orientation(&self) -> &SparseVec {
        &self.orientation
    }

    /// `epsilon` applied to the top-degree component of `e`.
    pub fn epsilon(&self, e: &Element) -> Scalar {
        let top = e.component(self.algebra.generators(), self.formal_dim);
        let c = self.algebra.coords(&top, self.formal_dim).expect("component of top degree");
        c.dot(&self.orientation)
    }

    /// `P[i][j] = epsilon(a_i b_j)` for bases `a` of `A^k` and `b` of `A^{n-k}`.
    pub fn pairing_matrix(&self, k: i32) -> SparseMatrix {
        let a = &self.algebra;
        let left = a.basis(k);
        let right = a.basis(self.formal_dim - k);
        let rows = left
            .monomials
            .iter()
            .map(|x| {
                SparseVec::from_entries(
                    right
                        .monomials
                        .iter()
                        .enumerate()
                        .map(|(j, y)| (j, self.epsilon(&a.mul_monomials(x, y))))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix::from_rows(right.len(), rows)
    }

    /// Checks that `epsilon` kills coboundaries and that every pairing is
    /// perfect, reporting the first failing degree.
    pub fn check(&self) -> Result<PdReport> {
        let n = self.formal_dim;
        let a = &self.algebra;
        if self.orientation.is_zero() {
            return Err(Error::InvalidPd { degree: n, reason: "orientation is zero".into() });
        }
        let d = a.differential_matrix(n - 1);
        for j in 0..d.cols() {
            if !d.column(j).dot(&self.orientation).is_zero() {
                return Err(Error::InvalidPd {
                    degree: n - 1,
                    reason: format!(
                        "epsilon(d {}) is not zero",
                        a.format_monomial(&a.basis(n - 1).monomials[j])
                    ),
                });
            }
        }
        let mut pairing_ranks = Vec::new();
        for k in 0..=n {
            let p = self.pairing_matrix(k);
            let r = p.rank();
            if p.rows() != p.cols() || r != p.rows() {
                return Err(Error::InvalidPd {
                    degree: k,
                    reason: format!(
                        "pairing A^{k} x A^{} is {}x{} of rank {r}",
                        n - k,
                        p.rows(),
                        p.cols()
                    ),
                });
            }
            pairing_ranks.push((k, r));
        }
        Ok(PdReport { formal_dim: n, pairing_ranks })
    }

    /// The element of `A^n` with `epsilon = 1` (for a one-dimensional top degree).
    pub fn fundamental_class(&self) -> Result<Element> {
        let n = self.formal_dim;
        if self.algebra.dim(n) != 1 {
            return Err(Error::Hypothesis(format!("top degree of {} is not one-dimensional", self.algebra.name())));
        }
        let e = self.orientation.get(0);
        Ok(self.algebra.from_coords(n, &SparseVec::unit(0).scale(&(Scalar::one() / e))))
    }
}

/// Validated duality data: dual bases and the matrices of `pi_A` and its inverse.
#[derive(Clone, Debug)]
pub struct DualityData {
    pd: PdStructure,
    dual_bases: BTreeMap<i32, Vec<Element>>,
    pi: BTreeMap<i32, SparseMatrix>,
    pi_inv: BTreeMap<i32, SparseMatrix>,
}

impl DualityData {
    pub fn new(pd: PdStructure) -> Result<Self> {
        pd.check()?;
        let n = pd.formal_dim;
        let mut dual_bases = BTreeMap::new();
        let mut pi = BTreeMap::new();
        let mut pi_inv = BTreeMap::new();
        for k in 0..=n {
            let p = pd.pairing_matrix(k);
            let p_inv = inverse(&p)?.ok_or_else(|| Error::InvalidPd { degree: k, reason: "degenerate pairing".into() })?;
            let duals = p_inv.columns().iter().map(|c| pd.algebra.from_coords(n - k, c)).collect();
            dual_bases.insert(k, duals);
            let t = p.transpose();
            pi_inv.insert(k, inverse(&t)?.expect("transpose of an invertible matrix"));
            pi.insert(k, t);
        }
        Ok(DualityData { pd, dual_bases, pi, pi_inv })
    }

    pub fn pd(&self) -> &PdStructure {
        &self.pd
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra> {
        &self.pd.algebra
    }

    pub fn formal_dim(&self) -> i32 {
        self.pd.formal_dim
    }

    /// Elements `a_j*` of `A^{n-k}` with `epsilon(a_i a_j*) = delta_ij`.
    pub fn dual_basis(&self, k: i32) -> Result<&[Element]> {
        self.dual_bases
            .get(&k)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::DegreeMismatch(format!("degree {k} outside 0..={}", self.pd.formal_dim)))
    }

    /// Matrix of `pi_A : A^k -> (A^{n-k})^*`, in the dual of the monomial basis.
    pub fn pi_matrix(&self, k: i32) -> SparseMatrix {
        self.pi.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zeros(0, 0))
    }

    /// Matrix of `pi_A^{-1} : (A^{n-k})^* -> A^k`.
    pub fn pi_inverse_matrix(&self, k: i32) -> SparseMatrix {
        self.pi_inv.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zeros(0, 0))
    }

    /// `pi_A^{-1}(phi)` for a functional `phi` on `A^p`, as an element of `A^{n-p}`.
    pub fn element_of_functional(&self, p: i32, phi: &SparseVec) -> Element {
        let k = self.formal_dim() - p;
        self.algebra().from_coords(k, &self.pi_inverse_matrix(k).mul_vec(phi))
    }
}

/// The shriek map `f_! = pi_A^{-1} f^# pi_B : B^k -> A^{k+m-n}`.
#[derive(Clone, Debug)]
pub struct Shriek {
    f: Arc<AlgebraMorphism>,
    dd_a: Arc<DualityData>,
    dd_b: Arc<DualityData>,
    matrices: BTreeMap<i32, SparseMatrix>,
}

/// Outcome of the identities satisfied by a shriek map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShriekChecks {
    pub square_commutes: bool,
    pub a_linear: bool,
    pub chain_map: bool,
    pub shriek_after_f_is_alpha: bool,
}

impl ShriekChecks {
    pub fn all(&self) -> bool {
        self.square_commutes && self.a_linear && self.chain_map && self.shriek_after_f_is_alpha
    }
}

impl Shriek {
    pub fn new(f: Arc<AlgebraMorphism>, dd_a: Arc<DualityData>, dd_b: Arc<DualityData>) -> Result<Self> {
        if !Arc::ptr_eq(f.source(), dd_a.algebra()) || !Arc::ptr_eq(f.target(), dd_b.algebra()) {
            return Err(Error::CarrierMismatch("duality data do not match the morphism".into()));
        }
        let m = dd_a.formal_dim();
        let n = dd_b.formal_dim();
        let mut matrices = BTreeMap::new();
        for k in 0..=n {
            let j = k + m - n;
            let a_dim = dd_a.algebra().dim(j);
            let b_dim = dd_b.algebra().dim(k);
            let mat = if (0..=m).contains(&j) {
                let f_dual = f.matrix(n - k).transpose();
                dd_a.pi_inverse_matrix(j).mul(&f_dual)?.mul(&dd_b.pi_matrix(k))?
            } else {
                SparseMatrix::zeros(a_dim, b_dim)
            };
            matrices.insert(k, mat);
        }
        Ok(Shriek { f, dd_a, dd_b, matrices })
    }

    pub fn morphism(&self) -> &Arc<AlgebraMorphism> {
        &self.f
    }

    pub fn source_duality(&self) -> &Arc<DualityData> {
        &self.dd_a
    }

    pub fn target_duality(&self) -> &Arc<DualityData> {
        &self.dd_b
    }

    /// `m - n`, the degree of `f_!`.
    pub fn shift(&self) -> i32 {
        self.dd_a.formal_dim() - self.dd_b.formal_dim()
    }

    /// Matrix of `f_!` on `B^k`.
    pub fn matrix(&self, k: i32) -> SparseMatrix {
        self.matrices.get(&k).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(self.dd_a.algebra().dim(k + self.shift()), self.dd_b.algebra().dim(k))
        })
    }

    pub fn apply(&self, e: &Element) -> Element {
        let b = self.dd_b.algebra();
        let a = self.dd_a.algebra();
        let mut out = Element::zero();
        for k in 0..=self.dd_b.formal_dim() {
            let c = e.component(b.generators(), k);
            if c.is_zero() {
                continue;
            }
            let v = b.coords(&c, k).expect("component");
            out = out.add(&a.from_coords(k + self.shift(), &self.matrix(k).mul_vec(&v)));
        }
        out
    }

    /// `alpha = f_!(1)`.
    pub fn alpha(&self) -> Element {
        self.apply(&self.dd_b.algebra().one())
    }

    /// Verifies the defining square, A-linearity, the chain property and
    /// `f_!(f(a)) = alpha a` on all basis elements.
    pub fn check(&self) -> Result<ShriekChecks> {
        let a = self.dd_a.algebra();
        let b = self.dd_b.algebra();
        let (m, n, t) = (self.dd_a.formal_dim(), self.dd_b.formal_dim(), self.shift());
        let mut square_commutes = true;
        for k in 0..=n {
            let j = k + t;
            if !(0..=m).contains(&j) {
                continue;
            }
            let lhs = self.dd_a.pi_matrix(j).mul(&self.matrix(k))?;
            let rhs = self.f.matrix(n - k).transpose().mul(&self.dd_b.pi_matrix(k))?;
            square_commutes &= lhs == rhs;
        }
        let mut a_linear = true;
        for p in 0..=m {
            for x in a.basis(p).monomials.iter() {
                let x = Element::monomial(x.clone());
                let fx = self.f.apply(&x);
                for q in 0..=n {
                    for y in b.basis(q).monomials.iter() {
                        let y = Element::monomial(y.clone());
                        let lhs = self.apply(&b.mul(&fx, &y));
                        let rhs = a.mul(&x, &self.apply(&y)).scale(&sign((p * t) as i64));
                        a_linear &= lhs == rhs;
                    }
                }
            }
        }
        let mut chain_map = true;
        for k in 0..=n {
            let lhs = a.differential_matrix(k + t).mul(&self.matrix(k))?;
            let rhs = self.matrix(k + 1).mul(&b.differential_matrix(k))?.scale(&sign(t as i64));
            chain_map &= lhs == rhs;
        }
        let alpha = self.alpha();
        let mut shriek_after_f_is_alpha = true;
        for p in 0..=m {
            for x in a.basis(p).monomials.iter() {
                let x = Element::monomial(x.clone());
                shriek_after_f_is_alpha &= self.apply(&self.f.apply(&x)) == a.mul(&alpha, &x);
            }
        }
        Ok(ShriekChecks { square_commutes, a_linear, chain_map, shriek_after_f_is_alpha })
    }
}

/// A cocycle `x` of `A` with `f(x) = omega`.
///
/// Fails with [`Error::NoPreimage`] when `omega` is not in the image of `f`
/// and with [`Error::NoCocyclePreimage`] when it is, but only through
/// non-closed elements.
pub fn preimage_cocycle(f: &AlgebraMorphism, omega: &Element) -> Result<Element> {
    let a = f.source();
    let b = f.target();
    let n = b.degree_of(omega)?.ok_or(Error::NoPreimage)?;
    let target = b.coords(omega, n)?;
    let fm = f.matrix(n);
    let cycles = kernel_basis(&a.differential_matrix(n));
    let z = SparseMatrix::from_columns(a.dim(n), &cycles.vectors);
    if let Some(y) = solve(&fm.mul(&z)?, &target)? {
        return Ok(a.from_coords(n, &z.mul_vec(&y)));
    }
    match solve(&fm, &target)? {
        Some(_) => Err(Error::NoCocyclePreimage),
        None => Err(Error::NoPreimage),
    }
}

/// The Poincare dual `x*` of a cocycle `x`, characterised by
/// `epsilon(x* y) = x^#(y)` where `x^#` is dual to `x` against a complement
/// containing the coboundaries.
#[derive(Clone, Debug)]
pub struct PoincareDual {
    pub x: Element,
    pub x_star: Element,
    pub degree: i32,
    /// Whether `x*` represents a nonzero cohomology class.
    pub nonzero: bool,
}

pub fn poincare_dual_class(dd: &DualityData, x: &Element) -> Result<PoincareDual> {
    let a = dd.algebra();
    let p = a.degree_of(x)?.ok_or_else(|| Error::Hypothesis("the zero element has no dual".into()))?;
    if !a.d(x).is_zero() {
        return Err(Error::Hypothesis(format!("{} is not a cocycle", a.format(x))));
    }
    let n = dd.formal_dim();
    if !(0..=n).contains(&p) {
        return Err(Error::DegreeMismatch(format!("degree {p} outside 0..={n}")));
    }
    let dim = a.dim(p);
    let xv = a.coords(x, p)?;
    let boundaries = image_basis(&a.differential_matrix(p - 1));
    let mut ech = EchelonBasis::new(dim);
    for v in &boundaries.vectors {
        ech.insert(v);
    }
    if !ech.insert(&xv) {
        return Err(Error::Hypothesis(format!("{} is a coboundary", a.format(x))));
    }
    let mut cols: Vec<SparseVec> = vec![xv];
    cols.extend(boundaries.vectors.iter().cloned());
    for i in 0..dim {
        let e = SparseVec::unit(i);
        if ech.insert(&e) {
            cols.push(e);
        }
    }
    let basis = SparseMatrix::from_columns(dim, &cols);
    let phi = solve(&basis.transpose(), &SparseVec::unit(0))?.expect("completed basis is invertible");
    let x_star = dd.element_of_functional(p, &phi);
    let q = n - p;
    let window = cochain_window(a, q - 1, q + 1)?;
    let h = window.cohomology(q)?;
    let xs = a.coords(&x_star, q)?;
    let nonzero = !h.is_coboundary(&xs);
    Ok(PoincareDual { x: x.clone(), x_star, degree: q, nonzero })
}

/// The scalar `c` with `f_!(1) = c 1` for a morphism between algebras of the
/// same formal dimension. Zero exactly when `f` kills the top class.
pub fn degree_scalar(shriek: &Shriek) -> Result<Scalar> {
    if shriek.shift() != 0 {
        return Err(Error::Hypothesis(format!(
            "formal dimensions differ by {}; the mapping degree needs equal dimensions",
            shriek.shift()
        )));
    }
    let a = shriek.source_duality().algebra();
    let alpha = shriek.alpha();
    Ok(alpha.coefficient(&crate::cdga::Monomial::one(a.n_generators())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn trunc(name: &str, n: u32) -> Arc<DGAlgebra> {
        Arc::new(DGAlgebra::from_strings(name, &[("x", 2)], &[&format!("x^{}", n + 1)], &[], None).unwrap())
    }

    fn dd(a: &Arc<DGAlgebra>) -> Arc<DualityData> {
        Arc::new(DualityData::new(PdStructure::with_default_orientation(a.clone()).unwrap()).unwrap())
    }

    #[test]
    fn sphere_and_cp3_are_pd() {
        let s2 = trunc("s2", 1);
        assert_eq!(PdStructure::with_default_orientation(s2).unwrap().check().unwrap().formal_dim, 2);
        let cp3 = trunc("cp3", 3);
        let r = PdStructure::with_default_orientation(cp3).unwrap().check().unwrap();
        assert_eq!(r.formal_dim, 6);
        assert_eq!(r.pairing_ranks.iter().filter(|(_, k)| *k == 1).count(), 4);
    }

    #[test]
    fn sullivan_algebra_rejected() {
        let a = Arc::new(DGAlgebra::from_strings("f", &[("x", 2), ("y", 3)], &[], &[], None).unwrap());
        assert!(matches!(PdStructure::with_default_orientation(a), Err(Error::Unbounded(_))));
    }

    #[test]
    fn degenerate_pairing_reported() {
        // x*y is the only top monomial but x^2 survives in degree 4 unpaired
        let a = Arc::new(
            DGAlgebra::from_strings("bad", &[("x", 2), ("y", 2)], &["x^3", "y^2", "x^2*y"], &[], None).unwrap(),
        );
        let e = PdStructure::with_default_orientation(a).unwrap().check().unwrap_err();
        assert!(matches!(e, Error::InvalidPd { .. }));
    }

    #[test]
    fn dual_bases() {
        let s2 = trunc("s2", 1);
        let d = dd(&s2);
        assert_eq!(d.dual_basis(0).unwrap(), &[s2.parse("x").unwrap()]);
        let cp3 = trunc("cp3", 3);
        let d = dd(&cp3);
        assert_eq!(d.dual_basis(2).unwrap(), &[cp3.parse("x^2").unwrap()]);
        assert_eq!(d.dual_basis(6).unwrap(), &[cp3.one()]);
    }

    #[test]
    fn projective_inclusion_shriek() {
        let a = trunc("cp3", 3);
        let b = trunc("cp1", 1);
        let f = Arc::new(AlgebraMorphism::from_strings(a.clone(), b.clone(), &[("x", "x")]).unwrap());
        let s = Shriek::new(f.clone(), dd(&a), dd(&b)).unwrap();
        assert_eq!(s.apply(&b.one()), a.parse("x^2").unwrap());
        assert_eq!(s.apply(&b.parse("x").unwrap()), a.parse("x^3").unwrap());
        assert!(s.check().unwrap().all());
        let x = preimage_cocycle(&f, &b.parse("x").unwrap()).unwrap();
        assert_eq!(x, a.parse("x").unwrap());
        let pd = poincare_dual_class(s.source_duality(), &x).unwrap();
        assert_eq!(pd.x_star, a.parse("x^2").unwrap());
        assert!(pd.nonzero);
    }

    #[test]
    fn sphere_self_maps() {
        let s3 = Arc::new(DGAlgebra::from_strings("s3", &[("x", 3)], &[], &[], Some(crate::cdga::AlgebraKind::FiniteDimensional)).unwrap());
        let d = dd(&s3);
        for deg in [0i64, 1, 2, 3] {
            let f = Arc::new(AlgebraMorphism::from_strings(s3.clone(), s3.clone(), &[("x", &format!("{deg}*x"))]).unwrap());
            let s = Shriek::new(f, d.clone(), d.clone()).unwrap();
            assert_eq!(degree_scalar(&s).unwrap(), int(deg));
            assert_eq!(s.apply(&s3.parse("x").unwrap()), s3.parse("x").unwrap());
            assert!(s.check().unwrap().all());
        }
    }

    #[test]
    fn preimage_failures() {
        let a = trunc("cp1", 1);
        let zero = Arc::new(AlgebraMorphism::from_strings(a.clone(), a.clone(), &[]).unwrap());
        assert_eq!(preimage_cocycle(&zero, &a.parse("x").unwrap()), Err(Error::NoPreimage));
        let id = AlgebraMorphism::identity(a.clone());
        assert_eq!(preimage_cocycle(&id, &a.parse("x").unwrap()).unwrap(), a.parse("x").unwrap());
    }

    #[test]
    fn dual_of_unit_and_volume() {
        let a = trunc("cp2", 2);
        let d = dd(&a);
        assert_eq!(poincare_dual_class(&d, &a.one()).unwrap().x_star, a.parse("x^2").unwrap());
        assert_eq!(poincare_dual_class(&d, &a.parse("x^2").unwrap()).unwrap().x_star, a.one());
    }
}
