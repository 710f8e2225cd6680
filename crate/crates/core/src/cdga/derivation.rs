use std::sync::Arc;

use super::algebra::DGAlgebra;
use super::element::{Element, Generator, Monomial};
use super::morphism::AlgebraMorphism;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::SparseMatrix;

/// Value on an ordered word `u_1 ... u_r` of the map determined by `values`
/// through the twisted Leibniz rule
///
/// `theta(u_1...u_r) = sum_i (-1)^{p deg(u_1...u_{i-1})} rho(u_1...u_{i-1}) theta(u_i) rho(u_{i+1}...u_r)`
///
/// where `p` is the parity of `theta` and `rho` is given by `images`.
pub(crate) fn leibniz_expand(
    target: &DGAlgebra,
    source_gens: &[Generator],
    word: &[usize],
    values: &[Element],
    images: &[Element],
    odd: bool,
) -> Element {
    let r = word.len();
    let mut suffix = vec![target.one(); r + 1];
    for i in (0..r).rev() {
        suffix[i] = target.mul(&images[word[i]], &suffix[i + 1]);
    }
    let mut out = Element::zero();
    let mut prefix = target.one();
    let mut prefix_deg = 0i64;
    for i in 0..r {
        let u = word[i];
        if !values[u].is_zero() && !suffix[i + 1].is_zero() {
            let term = target.mul(&target.mul(&prefix, &values[u]), &suffix[i + 1]);
            let s = if odd { sign(prefix_deg) } else { sign(0) };
            out.add_scaled(&s, &term);
        }
        prefix = target.mul(&prefix, &images[u]);
        prefix_deg += source_gens[u].degree as i64;
        if prefix.is_zero() {
            break;
        }
    }
    out
}

/// A derivation `theta : A -> B` along a morphism `f`, lowering degrees by
/// `degree`: `theta(ab) = theta(a) f(b) + (-1)^{degree |a|} f(a) theta(b)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    morphism: Arc<AlgebraMorphism>,
    degree: i32,
    values: Vec<Element>,
}

impl Derivation {
    /// Checks that each value sits in degree `|v| - degree` of the target and,
    /// when the source has relations, that they are killed.
    pub fn new(morphism: Arc<AlgebraMorphism>, degree: i32, values: Vec<Element>) -> Result<Self> {
        let src = morphism.source().clone();
        let tgt = morphism.target().clone();
        if values.len() != src.n_generators() {
            return Err(Error::Dimension(format!(
                "{} derivation values for {} generators",
                values.len(),
                src.n_generators()
            )));
        }
        for (g, v) in src.generators().iter().zip(&values) {
            if let Some(d) = tgt.degree_of(v)? {
                if d != g.degree - degree {
                    return Err(Error::DegreeMismatch(format!(
                        "value on {} has degree {d}, expected {}",
                        g.name,
                        g.degree - degree
                    )));
                }
            }
        }
        let theta = Derivation { morphism, degree, values };
        for r in src.relations() {
            if !theta.apply(r).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "derivation does not vanish on the relation {}",
                    src.format(r)
                )));
            }
        }
        Ok(theta)
    }

    pub fn morphism(&self) -> &Arc<AlgebraMorphism> {
        &self.morphism
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let src = self.morphism.source();
        leibniz_expand(
            self.morphism.target(),
            src.generators(),
            &m.word(),
            &self.values,
            self.morphism.images(),
            self.degree.rem_euclid(2) == 1,
        )
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// Matrix from source degree `n` to target degree `n - degree`.
    pub fn matrix(&self, n: i32) -> Result<SparseMatrix> {
        let src = self.morphism.source();
        src.matrix_of(n, self.morphism.target(), n - self.degree, |m| self.apply_monomial(m))
    }

    /// The bracket `[a, b] = a b - (-1)^{|a||b|} b a` of two derivations of
    /// the same algebra along the identity.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        let alg = self.morphism.source();
        if !self.morphism.is_identity() || !other.morphism.is_identity() {
            return Err(Error::Hypothesis("bracket needs derivations along the identity".into()));
        }
        let s = sign((self.degree as i64) * (other.degree as i64));
        let values = (0..alg.n_generators())
            .map(|i| {
                let g = alg.generator(i);
                let ab = self.apply(&other.apply(&g));
                let ba = other.apply(&self.apply(&g));
                ab.sub(&ba.scale(&s))
            })
            .collect();
        Derivation::new(self.morphism.clone(), self.degree + other.degree, values)
    }
}
