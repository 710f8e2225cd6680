use std::collections::BTreeMap;
use std::sync::Arc;

use super::loop_model::LoopModel;
use super::module::CoefficientModule;
use crate::cdga::{Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{CochainComplex, CohomologyGroup, Scalar, SparseMatrix, SparseVec};

/// The values `gamma(w)` of a cochain on one bar monomial `w`, occupying
/// `len` consecutive coordinates from `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub word: Monomial,
    pub word_length: u32,
    pub value_degree: i32,
    pub offset: usize,
    pub len: usize,
}

/// One term `c * a * w` of `D(w)`, with `a` a base monomial and `w` a bar monomial.
#[derive(Clone, Debug)]
struct DTerm {
    coeff: Scalar,
    a: Monomial,
    a_degree: i32,
    w: Monomial,
}

/// The Hochschild cochain complex `Hom_AV(AV (x) AVbar, M)`.
///
/// A cochain of degree `k` assigns to each bar monomial `w` a value in
/// `M^{|w|+k}`; it extends to `AV (x) AVbar` by
/// `gamma(a w) = (-1)^{|a| k} a gamma(w)`, and
/// `(D gamma)(w) = d gamma(w) - (-1)^k gamma(D w)`.
#[derive(Debug)]
pub struct HochschildComplex {
    loop_model: Arc<LoopModel>,
    module: Arc<CoefficientModule>,
    window: (i32, i32),
    blocks: BTreeMap<i32, Vec<Block>>,
    complex: CochainComplex,
}

/// Betti numbers in one cochain degree, in total and per bar word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildDegree {
    pub degree: i32,
    pub betti: usize,
    pub hodge: BTreeMap<u32, usize>,
}

impl HochschildComplex {
    /// Assembles the complex for cochain degrees `lo..=hi`; the neighbouring
    /// degrees are assembled as well so cohomology is available throughout.
    pub fn new(loop_model: Arc<LoopModel>, module: Arc<CoefficientModule>, lo: i32, hi: i32) -> Result<Self> {
        if !Arc::ptr_eq(loop_model.base(), module.base()) {
            return Err(Error::CarrierMismatch(format!(
                "module {} is not over the base of the loop model",
                module.name()
            )));
        }
        if lo > hi {
            return Err(Error::Dimension(format!("empty window [{lo}, {hi}]")));
        }
        let (mlo, mhi) = module.range();
        let (alo, ahi) = (lo - 1, hi + 1);
        let mut blocks = BTreeMap::new();
        for k in alo..=ahi {
            let mut list = Vec::new();
            let mut offset = 0;
            for q in 0..=(mhi - k).max(-1) {
                if q + k < mlo {
                    continue;
                }
                for w in loop_model.bar_monomials(q) {
                    let len = module.dim(q + k);
                    if len == 0 {
                        continue;
                    }
                    let word_length = loop_model.bar_length(&w);
                    list.push(Block { word: w, word_length, value_degree: q + k, offset, len });
                    offset += len;
                }
            }
            blocks.insert(k, list);
        }

        let total = loop_model.total();
        let mut d_cache: BTreeMap<Monomial, Vec<DTerm>> = BTreeMap::new();
        let mut d_of = |w: &Monomial| -> Vec<DTerm> {
            d_cache
                .entry(w.clone())
                .or_insert_with(|| {
                    total
                        .d(&Element::monomial(w.clone()))
                        .terms()
                        .map(|(m, c)| {
                            let (a, wi) = loop_model.split(m);
                            let a_degree = a.degree(loop_model.base().generators());
                            DTerm { coeff: c.clone(), a, a_degree, w: wi }
                        })
                        .collect()
                })
                .clone()
        };

        let mut diffs = BTreeMap::new();
        for k in alo..ahi {
            let src = &blocks[&k];
            let tgt = &blocks[&(k + 1)];
            let rows = tgt.iter().map(|b| b.len).sum();
            let src_index: BTreeMap<&Monomial, &Block> = src.iter().map(|b| (&b.word, b)).collect();
            let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); src.iter().map(|b| b.len).sum()];
            // d_M gamma(w)
            let tgt_index: BTreeMap<&Monomial, &Block> = tgt.iter().map(|b| (&b.word, b)).collect();
            for b in src {
                if let Some(t) = tgt_index.get(&b.word) {
                    let dm = module.differential(b.value_degree);
                    for j in 0..b.len {
                        for (i, c) in dm.column(j).iter() {
                            cols[b.offset + j].push((t.offset + i, c.clone()));
                        }
                    }
                }
            }
            // -(-1)^k sum c (-1)^{|a| k} a gamma(w_i)
            for t in tgt {
                for term in d_of(&t.word) {
                    let Some(b) = src_index.get(&term.w) else { continue };
                    let s = -sign(k as i64) * sign((term.a_degree * k) as i64) * &term.coeff;
                    for j in 0..b.len {
                        let v = module.act_monomial(&term.a, b.value_degree, &SparseVec::unit(j));
                        for (i, c) in v.iter() {
                            cols[b.offset + j].push((t.offset + i, &s * c));
                        }
                    }
                }
            }
            let cols: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_entries).collect();
            let m = SparseMatrix::from_columns(rows, &cols);
            // block-diagonality in the bar word length
            for b in src {
                for j in 0..b.len {
                    for (i, _) in m.column(b.offset + j).iter() {
                        let t = tgt.iter().find(|t| t.offset <= i && i < t.offset + t.len).expect("row in range");
                        if t.word_length != b.word_length {
                            return Err(Error::Invariant(format!(
                                "Hochschild differential mixes word lengths {} and {} in degree {k}",
                                b.word_length, t.word_length
                            )));
                        }
                    }
                }
            }
            diffs.insert(k, m);
        }
        let dims = blocks.iter().map(|(k, bs)| (*k, bs.iter().map(|b| b.len).sum())).collect();
        let complex = CochainComplex::new(alo, ahi, dims, diffs)?;
        if let Some(k) = complex.square_defects().first() {
            return Err(Error::BrokenComplex { degree: *k + 1 });
        }
        Ok(HochschildComplex { loop_model, module, window: (lo, hi), blocks, complex })
    }

    pub fn loop_model(&self) -> &Arc<LoopModel> {
        &self.loop_model
    }

    pub fn module(&self) -> &Arc<CoefficientModule> {
        &self.module
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Whether cochain degree `k` has been assembled (including the padding).
    pub fn has_degree(&self, k: i32) -> bool {
        self.blocks.contains_key(&k)
    }

    pub fn blocks(&self, k: i32) -> &[Block] {
        self.blocks.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, k: i32) -> usize {
        self.complex.dim(k)
    }

    pub fn block_of(&self, k: i32, w: &Monomial) -> Option<&Block> {
        self.blocks(k).iter().find(|b| &b.word == w)
    }

    /// Matrix of `D` from cochain degree `k`.
    pub fn differential(&self, k: i32) -> Result<&SparseMatrix> {
        self.complex
            .differential(k)
            .ok_or_else(|| Error::Dimension(format!("cochain degree {k} is not assembled")))
    }

    pub fn cohomology(&self, k: i32) -> Result<CohomologyGroup> {
        self.complex.cohomology(k)
    }

    /// Total and per-word-length Betti numbers on the window.
    pub fn report(&self) -> Result<Vec<HochschildDegree>> {
        let hodge = self.hodge_decompose()?;
        (self.window.0..=self.window.1)
            .map(|k| {
                let betti = self.complex.cohomology(k)?.betti;
                let pieces: BTreeMap<u32, usize> =
                    hodge.iter().map(|(i, bs)| (*i, bs.get(&k).copied().unwrap_or(0))).filter(|(_, b)| *b > 0).collect();
                let sum: usize = pieces.values().sum();
                if sum != betti {
                    return Err(Error::Invariant(format!(
                        "Hodge pieces sum to {sum} but the total Betti number in degree {k} is {betti}"
                    )));
                }
                Ok(HochschildDegree { degree: k, betti, hodge: pieces })
            })
            .collect()
    }

    /// Betti numbers of each bar-word-length subcomplex on the window.
    pub fn hodge_decompose(&self) -> Result<BTreeMap<u32, BTreeMap<i32, usize>>> {
        let lengths: std::collections::BTreeSet<u32> =
            self.blocks.values().flat_map(|bs| bs.iter().map(|b| b.word_length)).collect();
        let mut out = BTreeMap::new();
        for i in lengths {
            let select: BTreeMap<i32, Vec<usize>> = self
                .blocks
                .iter()
                .map(|(k, bs)| {
                    let idx = bs
                        .iter()
                        .filter(|b| b.word_length == i)
                        .flat_map(|b| b.offset..b.offset + b.len)
                        .collect();
                    (*k, idx)
                })
                .collect();
            let sub = self.complex.subcomplex(&select)?;
            let betti = (self.window.0..=self.window.1)
                .map(|k| Ok((k, sub.cohomology(k)?.betti)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            out.insert(i, betti);
        }
        Ok(out)
    }

    /// Values `gamma(w)` of a cochain of degree `k` given by coordinates.
    pub fn values(&self, k: i32, v: &SparseVec) -> Vec<(Block, SparseVec)> {
        self.blocks(k)
            .iter()
            .map(|b| (b.clone(), v.reindex(|i| (b.offset <= i && i < b.offset + b.len).then(|| i - b.offset))))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Coordinates of the cochain of degree `k` with the given values.
    pub fn from_values(&self, k: i32, values: &[(Monomial, SparseVec)]) -> Result<SparseVec> {
        let mut entries = Vec::new();
        for (w, x) in values {
            if x.is_zero() {
                continue;
            }
            let b = self
                .block_of(k, w)
                .ok_or_else(|| Error::DegreeMismatch(format!("no block for this word in cochain degree {k}")))?;
            for (i, c) in x.iter() {
                if i >= b.len {
                    return Err(Error::Dimension("value longer than its block".into()));
                }
                entries.push((b.offset + i, c.clone()));
            }
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// The degree-0 cochain `1 -> 1`, zero on longer words (algebra coefficients).
    pub fn unit_cochain(&self) -> Result<SparseVec> {
        let a = self.module.algebra()?;
        let one = a.coords(&a.one(), 0)?;
        let w = Monomial::one(self.loop_model.total().n_generators());
        self.from_values(0, &[(w, one)])
    }

    /// Evaluates a cochain on `a * w` using the linearity rule.
    pub fn evaluate(&self, k: i32, v: &SparseVec, a: &Monomial, w: &Monomial) -> SparseVec {
        let Some(b) = self.block_of(k, w) else { return SparseVec::new() };
        let x = v.reindex(|i| (b.offset <= i && i < b.offset + b.len).then(|| i - b.offset));
        let ad = a.degree(self.loop_model.base().generators());
        self.module.act_monomial(a, b.value_degree, &x).scale(&sign((ad * k) as i64))
    }
}
