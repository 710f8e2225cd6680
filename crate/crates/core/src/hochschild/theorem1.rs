use std::sync::Arc;

use super::complex::HochschildComplex;
use super::loop_model::LoopModel;
use super::maps::{InducedMap, ModuleMap};
use super::module::CoefficientModule;
use crate::cdga::AlgebraMorphism;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poincare::{degree_scalar, preimage_cocycle, DualityData, Shriek};

/// The data shared by the Hochschild computations attached to a morphism
/// `f : A -> B` of Poincare duality algebras with a Sullivan model
/// `phi : AV -> A`: the loop model of `AV` and the modules `A`, `B`
/// (through `phi` and `f phi`).
#[derive(Debug)]
pub struct MorphismSetup {
    pub f: Arc<AlgebraMorphism>,
    pub phi: Arc<AlgebraMorphism>,
    pub dd_a: Arc<DualityData>,
    pub dd_b: Arc<DualityData>,
    pub loop_model: Arc<LoopModel>,
    pub module_a: Arc<CoefficientModule>,
    pub module_b: Arc<CoefficientModule>,
    pub shriek: Shriek,
}

impl MorphismSetup {
    pub fn new(
        f: Arc<AlgebraMorphism>,
        phi: Arc<AlgebraMorphism>,
        dd_a: Arc<DualityData>,
        dd_b: Arc<DualityData>,
    ) -> Result<Self> {
        if !Arc::ptr_eq(phi.target(), f.source()) {
            return Err(Error::CarrierMismatch("the Sullivan model does not map to the source of f".into()));
        }
        let loop_model = Arc::new(LoopModel::new(phi.source().clone())?);
        let module_a = Arc::new(CoefficientModule::from_morphism(phi.clone())?);
        let module_b = Arc::new(CoefficientModule::from_morphism(Arc::new(phi.then(&f)?))?);
        let shriek = Shriek::new(f.clone(), dd_a.clone(), dd_b.clone())?;
        Ok(MorphismSetup { f, phi, dd_a, dd_b, loop_model, module_a, module_b, shriek })
    }

    pub fn complex(&self, module: &Arc<CoefficientModule>, lo: i32, hi: i32) -> Result<Arc<HochschildComplex>> {
        Ok(Arc::new(HochschildComplex::new(self.loop_model.clone(), module.clone(), lo, hi)?))
    }
}

/// Chain-level comparison in one cochain degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Degree {
    pub degree: i32,
    pub cochains: usize,
    pub mismatches: usize,
    /// Description of the first basis cochain where the two sides differ.
    pub first_mismatch: Option<String>,
}

/// Outcome of checking `HH(f_!) HH(f) = [x*] .` basis cochain by basis cochain.
#[derive(Clone, Debug)]
pub struct Theorem1Record {
    pub window: (i32, i32),
    pub shift: i32,
    pub x: String,
    pub x_star: String,
    pub alpha: String,
    pub alpha_equals_x_star: bool,
    pub x_dual_pairs_to_one: bool,
    pub x_star_class_nonzero: bool,
    pub degrees: Vec<Theorem1Degree>,
}

impl Theorem1Record {
    pub fn holds(&self) -> bool {
        self.alpha_equals_x_star && self.x_dual_pairs_to_one && self.degrees.iter().all(|d| d.mismatches == 0)
    }
}

/// Verifies, for surjective `f` with a cocycle preimage `x` of the
/// fundamental class of `B`, that `f_! o f` acts on every Hochschild cochain
/// of `A` with coefficients in `A` as multiplication by the Poincare dual
/// `x*` of `x`.
pub fn verify_theorem1(setup: &MorphismSetup, lo: i32, hi: i32) -> Result<Theorem1Record> {
    let f = &setup.f;
    let a = f.source();
    let b = f.target();
    let n = setup.dd_b.formal_dim();
    if !f.is_surjective_in(0..=n) {
        return Err(Error::Hypothesis(format!("{} -> {} is not surjective", a.name(), b.name())));
    }
    let omega_b = setup.dd_b.pd().fundamental_class()?;
    let x = preimage_cocycle(f, &omega_b)?;
    // x^# = f^#(omega_B^#) with omega_B^# = epsilon_B, and x* = pi_A^{-1}(x^#)
    let x_sharp = f.matrix(n).transpose().mul_vec(setup.dd_b.pd().orientation());
    let x_star = setup.dd_a.element_of_functional(n, &x_sharp);
    let x_dual_pairs_to_one = x_sharp.dot(&a.coords(&x, n)?) == num::One::one();
    let alpha = setup.shriek.alpha();
    let t = setup.shriek.shift();
    let x_star_class_nonzero = {
        let h = crate::cdga::cohomology(a, t, t)?;
        !x_star.is_zero() && !h[&t].is_coboundary(&a.coords(&x_star, t)?)
    };

    let hc_aa = setup.complex(&setup.module_a, lo, hi + t)?;
    let hc_ab = setup.complex(&setup.module_b, lo, hi)?;
    let f_star = InducedMap::new(
        &ModuleMap::from_morphism(f, setup.module_a.clone(), setup.module_b.clone())?,
        hc_aa.clone(),
        hc_ab.clone(),
    )?;
    let shriek_star = InducedMap::new(
        &ModuleMap::from_shriek(&setup.shriek, setup.module_b.clone(), setup.module_a.clone())?,
        hc_ab,
        hc_aa.clone(),
    )?;
    let composite = f_star.then(&shriek_star)?;
    let mult = InducedMap::multiply_by_class(hc_aa.clone(), &x_star)?;

    let mut degrees = Vec::new();
    for k in lo..=hi {
        let (Some(lhs), Some(rhs)) = (composite.matrix(k), mult.matrix(k)) else {
            return Err(Error::Dimension(format!("comparison not assembled in degree {k}")));
        };
        let mut mismatches = 0;
        let mut first_mismatch = None;
        for j in 0..lhs.cols() {
            if lhs.column(j) != rhs.column(j) {
                mismatches += 1;
                if first_mismatch.is_none() {
                    first_mismatch = Some(describe_cochain(&hc_aa, k, j));
                }
            }
        }
        degrees.push(Theorem1Degree { degree: k, cochains: lhs.cols(), mismatches, first_mismatch });
    }
    Ok(Theorem1Record {
        window: (lo, hi),
        shift: t,
        x: a.format(&x),
        x_star: a.format(&x_star),
        alpha: a.format(&alpha),
        alpha_equals_x_star: alpha == x_star,
        x_dual_pairs_to_one,
        x_star_class_nonzero,
        degrees,
    })
}

/// Human-readable name of basis cochain `j` of degree `k`: its word and value.
pub fn describe_cochain(hc: &HochschildComplex, k: i32, j: usize) -> String {
    let total = hc.loop_model().total();
    for b in hc.blocks(k) {
        if b.offset <= j && j < b.offset + b.len {
            let value = match hc.module().algebra() {
                Ok(a) => a.format(&a.from_coords(b.value_degree, &SparseVec::unit(j - b.offset))),
                Err(_) => format!("dual basis vector {} in degree {}", j - b.offset, b.value_degree),
            };
            return format!("{} -> {}", total.format_monomial(&b.word), value);
        }
    }
    format!("index {j} in degree {k}")
}

/// Injectivity of the composite on one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryDegree {
    pub degree: i32,
    pub source_betti: usize,
    pub target_betti: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct CorollaryRecord {
    pub window: (i32, i32),
    pub degree_scalar: String,
    pub degrees: Vec<CorollaryDegree>,
}

impl CorollaryRecord {
    pub fn injective(&self) -> bool {
        self.degrees.iter().all(|d| d.rank == d.source_betti)
    }
}

/// Checks that the composite
/// `HH(A; A^#) -> HH(A; A) -> HH(A; B) -> HH(A; B^#)`
/// of `(pi_A^{-1})_*`, `f_*` and `(pi_B)_*` is injective in cohomology,
/// for `f` between algebras of equal formal dimension and nonzero degree.
pub fn corollary_shriek_on_homology(setup: &MorphismSetup, lo: i32, hi: i32) -> Result<CorollaryRecord> {
    let c = degree_scalar(&setup.shriek)?;
    if num::Zero::is_zero(&c) {
        return Err(Error::Hypothesis("the morphism has degree zero".into()));
    }
    let m = setup.dd_a.formal_dim();
    let n = setup.dd_b.formal_dim();
    let a_dual = Arc::new(setup.module_a.dual());
    let b_dual = Arc::new(setup.module_b.dual());
    let hc_a_dual = setup.complex(&a_dual, lo, hi)?;
    let hc_a = setup.complex(&setup.module_a, lo + m, hi + m)?;
    let hc_b = setup.complex(&setup.module_b, lo + m, hi + m)?;
    let hc_b_dual = setup.complex(&b_dual, lo + m - n, hi + m - n)?;
    let step1 = InducedMap::new(
        &ModuleMap::pi_inverse(&setup.dd_a, a_dual.clone(), setup.module_a.clone())?,
        hc_a_dual.clone(),
        hc_a.clone(),
    )?;
    let step2 = InducedMap::new(
        &ModuleMap::from_morphism(&setup.f, setup.module_a.clone(), setup.module_b.clone())?,
        hc_a,
        hc_b.clone(),
    )?;
    let step3 = InducedMap::new(&ModuleMap::pi(&setup.dd_b, setup.module_b.clone(), b_dual)?, hc_b, hc_b_dual.clone())?;
    let composite = step1.then(&step2)?.then(&step3)?;
    let degrees = (lo..=hi)
        .map(|k| {
            Ok(CorollaryDegree {
                degree: k,
                source_betti: hc_a_dual.cohomology(k)?.betti,
                target_betti: hc_b_dual.cohomology(k + m - n)?.betti,
                rank: composite.rank_on_cohomology(k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorollaryRecord { window: (lo, hi), degree_scalar: crate::linalg::scalar::format_scalar(&c), degrees })
}
