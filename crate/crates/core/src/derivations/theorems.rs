use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::DerivationComplex;
use super::splitting::{compute_splitting, Splitting};
use crate::cdga::Monomial;
use crate::error::{Error, Result};
use crate::hochschild::{HochschildComplex, InducedMap, ModuleMap, MorphismSetup};
use crate::linalg::{induced_rank, SparseMatrix, SparseVec};

/// A degree-preserving map between derivation complexes, `theta -> L o theta`.
#[derive(Debug)]
pub struct DerivationMap {
    pub matrices: BTreeMap<i32, SparseMatrix>,
}

/// `theta -> L o theta` for a linear map `L` between the targets given by
/// its matrix in each degree.
pub fn postcompose(
    source: &DerivationComplex,
    target: &DerivationComplex,
    linear: impl Fn(i32) -> SparseMatrix,
) -> Result<DerivationMap> {
    let (lo, hi) = source.window();
    let mut matrices = BTreeMap::new();
    for n in lo - 1..=hi + 1 {
        if !target.has_degree(n) {
            continue;
        }
        let mut cols = vec![SparseVec::new(); source.dim(n)];
        for b in source.blocks(n) {
            let l = linear(b.value_degree);
            let tb = target.blocks(n).iter().find(|t| t.generator == b.generator);
            for j in 0..b.len {
                let v = l.column(j);
                if v.is_zero() {
                    continue;
                }
                let tb = tb.ok_or_else(|| Error::Invariant(format!("image leaves Der_{n} of the target")))?;
                cols[b.offset + j] = v.reindex(|i| Some(tb.offset + i));
            }
        }
        matrices.insert(n, SparseMatrix::from_columns(target.dim(n), &cols));
    }
    let map = DerivationMap { matrices };
    for (&n, m) in &map.matrices {
        let (Some(prev), Ok(ds), Ok(dt)) = (map.matrices.get(&(n - 1)), source.differential(n), target.differential(n))
        else {
            continue;
        };
        if dt.mul(m)? != prev.mul(ds)? {
            return Err(Error::Invariant(format!("postcomposition is not a chain map in degree {n}")));
        }
    }
    Ok(map)
}

/// `f_* : Der(AV, A; phi) -> Der(AV, B; f phi)`.
pub fn pushforward(setup: &MorphismSetup, der_a: &DerivationComplex, der_b: &DerivationComplex) -> Result<DerivationMap> {
    let fphi = setup.module_b.carrier().expect("algebra module");
    if !Arc::ptr_eq(der_a.rho(), &setup.phi) || !Arc::ptr_eq(der_b.rho(), fphi) {
        return Err(Error::CarrierMismatch("derivation complexes are not along phi and f phi".into()));
    }
    postcompose(der_a, der_b, |k| setup.f.matrix(k))
}

/// Rank comparison in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionDegree {
    pub degree: i32,
    pub source_betti: usize,
    pub target_betti: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct InjectionRecord {
    pub window: (i32, i32),
    pub degree_scalar: String,
    pub complement_dims: BTreeMap<i32, usize>,
    pub splitting_verified: bool,
    /// `p_* f_* = id` at chain level on the window.
    pub retraction_exact: bool,
    pub degrees: Vec<InjectionDegree>,
}

impl InjectionRecord {
    pub fn injective(&self) -> bool {
        self.degrees.iter().all(|d| d.rank == d.source_betti)
    }

    pub fn holds(&self) -> bool {
        self.injective() && self.retraction_exact && self.splitting_verified
    }
}

fn splitting_for(setup: &MorphismSetup) -> Result<Splitting> {
    compute_splitting(&setup.shriek)
}

/// Injectivity of `H(f_*)` on derivation homology in degrees `lo..=hi`.
pub fn verify_injection_theorem(setup: &MorphismSetup, lo: i32, hi: i32) -> Result<InjectionRecord> {
    let split = splitting_for(setup)?;
    let fphi = setup.module_b.carrier().expect("algebra module").clone();
    let der_a = DerivationComplex::new(setup.phi.clone(), lo, hi)?;
    let der_b = DerivationComplex::new(fphi, lo, hi)?;
    let f_star = pushforward(setup, &der_a, &der_b)?;
    let p_star = postcompose(&der_b, &der_a, |k| {
        split.projection.get(&k).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(setup.f.source().dim(k), setup.f.target().dim(k))
        })
    })?;
    let (lo, hi) = der_a.window();
    let mut retraction_exact = true;
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let fm = &f_star.matrices[&n];
        retraction_exact &= p_star.matrices[&n].mul(fm)? == SparseMatrix::identity(der_a.dim(n));
        let ha = der_a.homology(n)?;
        let hb = der_b.homology(n)?;
        degrees.push(InjectionDegree {
            degree: n,
            source_betti: ha.betti,
            target_betti: hb.betti,
            rank: induced_rank(&ha, fm, &hb),
        });
    }
    Ok(InjectionRecord {
        window: (lo, hi),
        degree_scalar: crate::linalg::scalar::format_scalar(&split.degree_scalar),
        complement_dims: split.complement_dims(),
        splitting_verified: split.checks.all(),
        retraction_exact,
        degrees,
    })
}

/// Injectivity of `HH(f) : HH(A; A) -> HH(A; B)` in cochain degrees
/// `lo..=hi`, together with the chain-level retraction `HH(p) HH(f) = id`.
pub fn verify_theorem2(setup: &MorphismSetup, lo: i32, hi: i32) -> Result<InjectionRecord> {
    let split = splitting_for(setup)?;
    let hc_a = setup.complex(&setup.module_a, lo, hi)?;
    let hc_b = setup.complex(&setup.module_b, lo, hi)?;
    let f_star = InducedMap::new(
        &ModuleMap::from_morphism(&setup.f, setup.module_a.clone(), setup.module_b.clone())?,
        hc_a.clone(),
        hc_b.clone(),
    )?;
    let p = ModuleMap::new(setup.module_b.clone(), setup.module_a.clone(), 0, split.projection.clone())?;
    let p_star = InducedMap::new(&p, hc_b.clone(), hc_a.clone())?;
    let retract = f_star.then(&p_star)?;
    let mut retraction_exact = true;
    let mut degrees = Vec::new();
    for k in lo..=hi {
        let r = retract.matrix(k).ok_or_else(|| Error::Dimension(format!("retraction not assembled in {k}")))?;
        retraction_exact &= *r == SparseMatrix::identity(hc_a.dim(k));
        degrees.push(InjectionDegree {
            degree: k,
            source_betti: hc_a.cohomology(k)?.betti,
            target_betti: hc_b.cohomology(k)?.betti,
            rank: f_star.rank_on_cohomology(k)?,
        });
    }
    Ok(InjectionRecord {
        window: (lo, hi),
        degree_scalar: crate::linalg::scalar::format_scalar(&split.degree_scalar),
        complement_dims: split.complement_dims(),
        splitting_verified: split.checks.all(),
        retraction_exact,
        degrees,
    })
}

/// The inclusion `Der_n(AV, M; rho) -> CH^{1-n}(AV; M)`, `gamma(vbar) = theta(v)`
/// and `gamma = 0` on words of length other than one.
#[derive(Debug)]
pub struct DerivationEmbedding {
    pub matrices: BTreeMap<i32, SparseMatrix>,
    pub chain_map: bool,
    pub injective: bool,
    pub in_word_length_one: bool,
}

pub fn embed_derivations(der: &DerivationComplex, hc: &HochschildComplex) -> Result<DerivationEmbedding> {
    let rho = hc.module().carrier().ok_or_else(|| Error::CarrierMismatch("dual coefficients".into()))?;
    if !Arc::ptr_eq(rho, der.rho()) || !Arc::ptr_eq(hc.loop_model().base(), der.rho().source()) {
        return Err(Error::CarrierMismatch("derivations and cochains over different data".into()));
    }
    let lm = hc.loop_model();
    let n_total = lm.total().n_generators();
    let (lo, hi) = der.window();
    let mut matrices = BTreeMap::new();
    let mut in_word_length_one = true;
    let mut injective = true;
    for n in lo - 1..=hi + 1 {
        let k = 1 - n;
        if !hc.has_degree(k) {
            continue;
        }
        let mut cols = vec![SparseVec::new(); der.dim(n)];
        for b in der.blocks(n) {
            let w = Monomial::generator(n_total, lm.bar_index(b.generator));
            let tb = hc
                .block_of(k, &w)
                .ok_or_else(|| Error::Invariant(format!("no cochain block for a barred generator in degree {k}")))?;
            in_word_length_one &= tb.word_length == 1;
            for j in 0..b.len {
                cols[b.offset + j] = SparseVec::unit(tb.offset + j);
            }
        }
        let m = SparseMatrix::from_columns(hc.dim(k), &cols);
        injective &= m.rank() == der.dim(n);
        matrices.insert(n, m);
    }
    let mut chain_map = true;
    for (&n, m) in &matrices {
        let (Some(prev), Ok(dd), Ok(dh)) = (matrices.get(&(n - 1)), der.differential(n), hc.differential(1 - n)) else {
            continue;
        };
        chain_map &= dh.mul(m)? == prev.mul(dd)?;
    }
    Ok(DerivationEmbedding { matrices, chain_map, injective, in_word_length_one })
}

/// Whether `E_B f_* = HH(f) E_A` on every degree where both sides exist.
pub fn embedding_square_commutes(setup: &MorphismSetup, lo: i32, hi: i32) -> Result<bool> {
    let fphi = setup.module_b.carrier().expect("algebra module").clone();
    let der_a = DerivationComplex::new(setup.phi.clone(), lo, hi)?;
    let der_b = DerivationComplex::new(fphi, lo, hi)?;
    let (clo, chi) = (1 - der_a.window().1, 1 - der_a.window().0);
    let hc_a = setup.complex(&setup.module_a, clo, chi)?;
    let hc_b = setup.complex(&setup.module_b, clo, chi)?;
    let e_a = embed_derivations(&der_a, &hc_a)?;
    let e_b = embed_derivations(&der_b, &hc_b)?;
    let f_der = pushforward(setup, &der_a, &der_b)?;
    let f_hh = InducedMap::new(
        &ModuleMap::from_morphism(&setup.f, setup.module_a.clone(), setup.module_b.clone())?,
        hc_a,
        hc_b,
    )?;
    let mut ok = e_a.chain_map && e_b.chain_map;
    for n in der_a.window().0..=der_a.window().1 {
        let lhs = e_b.matrices[&n].mul(&f_der.matrices[&n])?;
        let rhs = f_hh
            .matrix(1 - n)
            .ok_or_else(|| Error::Dimension(format!("HH(f) not assembled in degree {}", 1 - n)))?
            .mul(&e_a.matrices[&n])?;
        ok &= lhs == rhs;
    }
    Ok(ok)
}
