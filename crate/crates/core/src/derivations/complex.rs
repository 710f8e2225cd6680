use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cdga::{AlgebraMorphism, Derivation, Element};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{CochainComplex, CohomologyGroup, SparseMatrix, SparseVec};

/// Values `theta(v)` on one generator `v`, stored at `offset..offset+len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerBlock {
    pub generator: usize,
    pub value_degree: i32,
    pub offset: usize,
    pub len: usize,
}

/// The complex of `rho`-derivations `Der(AV, B; rho)`, with `Der_n` the
/// derivations lowering degrees by `n` and
/// `delta theta = d_B theta - (-1)^n theta d`.
///
/// Internally stored as a cochain complex in degree `-n`.
#[derive(Debug)]
pub struct DerivationComplex {
    rho: Arc<AlgebraMorphism>,
    window: (i32, i32),
    blocks: BTreeMap<i32, Vec<DerBlock>>,
    complex: CochainComplex,
}

/// Homology of a derivation complex in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationDegree {
    pub degree: i32,
    pub dim: usize,
    pub betti: usize,
}

impl DerivationComplex {
    /// Assembles `Der_n` for `n` in `lo..=hi` (and one degree on each side).
    /// Windows are clamped below at `n = 1`.
    pub fn new(rho: Arc<AlgebraMorphism>, lo: i32, hi: i32) -> Result<Self> {
        let lo = lo.max(1);
        if lo > hi {
            return Err(Error::Dimension(format!("empty derivation window [{lo}, {hi}]")));
        }
        let src = rho.source().clone();
        let tgt = rho.target().clone();
        if src.has_relations() {
            return Err(Error::Hypothesis(format!("{} is not free; derivations need a Sullivan source", src.name())));
        }
        let mut blocks = BTreeMap::new();
        for n in lo - 1..=hi + 1 {
            let mut list = Vec::new();
            let mut offset = 0;
            for (i, g) in src.generators().iter().enumerate() {
                let len = tgt.dim(g.degree - n);
                if len > 0 {
                    list.push(DerBlock { generator: i, value_degree: g.degree - n, offset, len });
                    offset += len;
                }
            }
            blocks.insert(n, list);
        }
        let mut der = DerivationComplex {
            rho,
            window: (lo, hi),
            blocks,
            complex: CochainComplex::new(0, 0, BTreeMap::from([(0, 0)]), BTreeMap::new())?,
        };
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in lo - 1..=hi + 1 {
            dims.insert(-n, der.dim(n));
        }
        for n in lo..=hi + 1 {
            let cols = (0..der.dim(n))
                .map(|j| {
                    let theta = der.basis_derivation(n, j)?;
                    der.coords(n - 1, &der.delta(&theta))
                })
                .collect::<Result<Vec<_>>>()?;
            diffs.insert(-n, SparseMatrix::from_columns(der.dim(n - 1), &cols));
        }
        der.complex = CochainComplex::new(-(hi + 1), -(lo - 1), dims, diffs)?;
        if let Some(k) = der.complex.square_defects().first() {
            return Err(Error::BrokenComplex { degree: -(k + 1) });
        }
        Ok(der)
    }

    pub fn rho(&self) -> &Arc<AlgebraMorphism> {
        &self.rho
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn blocks(&self, n: i32) -> &[DerBlock] {
        self.blocks.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, n: i32) -> usize {
        self.blocks(n).iter().map(|b| b.len).sum()
    }

    pub fn has_degree(&self, n: i32) -> bool {
        self.blocks.contains_key(&n)
    }

    /// The derivation whose coordinates in `Der_n` are `v`.
    pub fn derivation(&self, n: i32, v: &SparseVec) -> Result<Derivation> {
        let src = self.rho.source();
        let tgt = self.rho.target();
        let mut values = vec![Element::zero(); src.n_generators()];
        for b in self.blocks(n) {
            let x = v.reindex(|i| (b.offset <= i && i < b.offset + b.len).then(|| i - b.offset));
            values[b.generator] = tgt.from_coords(b.value_degree, &x);
        }
        Derivation::new(self.rho.clone(), n, values)
    }

    pub fn basis_derivation(&self, n: i32, j: usize) -> Result<Derivation> {
        self.derivation(n, &SparseVec::unit(j))
    }

    /// Coordinates of a derivation of degree `n`.
    pub fn coords(&self, n: i32, theta: &Derivation) -> Result<SparseVec> {
        let tgt = self.rho.target();
        let mut entries = Vec::new();
        for (i, val) in theta.values().iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let b = self.blocks(n).iter().find(|b| b.generator == i).ok_or_else(|| {
                Error::DegreeMismatch(format!("derivation value outside Der_{n}"))
            })?;
            for (j, c) in tgt.coords(val, b.value_degree)?.iter() {
                entries.push((b.offset + j, c.clone()));
            }
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// `delta theta = d_B theta - (-1)^n theta d`, evaluated on generators.
    pub fn delta(&self, theta: &Derivation) -> Derivation {
        let src = self.rho.source();
        let tgt = self.rho.target();
        let n = theta.degree();
        let values = (0..src.n_generators())
            .map(|i| {
                let a = tgt.d(&theta.values()[i]);
                let b = theta.apply(src.differential_of(i));
                a.sub(&b.scale(&sign(n as i64)))
            })
            .collect();
        Derivation::new(self.rho.clone(), n - 1, values).expect("delta preserves the degree bookkeeping")
    }

    /// Matrix of `delta : Der_n -> Der_{n-1}`.
    pub fn differential(&self, n: i32) -> Result<&SparseMatrix> {
        self.complex
            .differential(-n)
            .ok_or_else(|| Error::Dimension(format!("Der_{n} is not assembled")))
    }

    pub fn homology(&self, n: i32) -> Result<CohomologyGroup> {
        self.complex.cohomology(-n)
    }

    pub fn report(&self) -> Result<Vec<DerivationDegree>> {
        (self.window.0..=self.window.1)
            .map(|n| Ok(DerivationDegree { degree: n, dim: self.dim(n), betti: self.homology(n)?.betti }))
            .collect()
    }
}

/// Rational homotopy group ranks of a mapping space, read off derivation
/// homology. Degree one is outside the range of the identification and is
/// only reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingSpaceRow {
    pub degree: i32,
    pub rank: usize,
    pub in_range: bool,
}

pub fn mapping_space_report(der: &DerivationComplex) -> Result<Vec<MappingSpaceRow>> {
    Ok(der
        .report()?
        .into_iter()
        .map(|d| MappingSpaceRow { degree: d.degree, rank: d.betti, in_range: d.degree >= 2 })
        .collect())
}
