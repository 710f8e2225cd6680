use std::sync::Arc;

use super::algebra::DGAlgebra;
use super::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// A morphism of commutative differential graded algebras, given by the
/// images of the source generators.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<DGAlgebra>,
    target: Arc<DGAlgebra>,
    images: Vec<Element>,
}

impl AlgebraMorphism {
    /// Checks degrees, that relations of the source go to zero and that the
    /// map commutes with the differentials on generators.
    pub fn new(source: Arc<DGAlgebra>, target: Arc<DGAlgebra>, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.n_generators() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} generators of {}",
                images.len(),
                source.n_generators(),
                source.name()
            )));
        }
        for (g, im) in source.generators().iter().zip(&images) {
            match target.degree_of(im) {
                Ok(Some(d)) if d != g.degree => {
                    return Err(Error::InvalidMorphism(format!(
                        "image of {} has degree {d}, expected {}",
                        g.name, g.degree
                    )))
                }
                Err(_) => {
                    return Err(Error::InvalidMorphism(format!("image of {} is not homogeneous", g.name)))
                }
                _ => {}
            }
        }
        let f = AlgebraMorphism { source, target, images };
        for r in f.source.relations() {
            if !f.apply(r).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "relation {} does not map to zero",
                    f.source.format(r)
                )));
            }
        }
        for i in 0..f.source.n_generators() {
            let lhs = f.apply(f.source.differential_of(i));
            let rhs = f.target.d(&f.images[i]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "f(d{}) = {} but d f({}) = {}",
                    f.source.generators()[i].name,
                    f.target.format(&lhs),
                    f.source.generators()[i].name,
                    f.target.format(&rhs)
                )));
            }
        }
        Ok(f)
    }

    /// Parses generator images `(name, polynomial)`; unlisted generators map to zero.
    pub fn from_strings(source: Arc<DGAlgebra>, target: Arc<DGAlgebra>, images: &[(&str, &str)]) -> Result<Self> {
        let mut ims = vec![Element::zero(); source.n_generators()];
        for (g, v) in images {
            let i = source.generator_index(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            ims[i] = target.parse(v)?;
        }
        AlgebraMorphism::new(source, target, ims)
    }

    pub fn identity(a: Arc<DGAlgebra>) -> Self {
        let images = (0..a.n_generators()).map(|i| a.generator(i)).collect();
        AlgebraMorphism { source: a.clone(), target: a, images }
    }

    pub fn source(&self) -> &Arc<DGAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DGAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target)
            && self.images.iter().enumerate().all(|(i, e)| *e == self.source.generator(i))
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        m.word().iter().fold(self.target.one(), |acc, &g| self.target.mul(&acc, &self.images[g]))
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// Matrix of `f : A^n -> B^n`.
    pub fn matrix(&self, n: i32) -> SparseMatrix {
        self.source
            .matrix_of(n, &self.target, n, |m| self.apply_monomial(m))
            .expect("morphisms preserve degree")
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(Error::InvalidMorphism("composition of non-composable morphisms".into()));
        }
        let images = self.images.iter().map(|e| other.apply(e)).collect();
        Ok(AlgebraMorphism { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Whether `f` is onto in every degree of `degrees`.
    pub fn is_surjective_in(&self, degrees: impl IntoIterator<Item = i32>) -> bool {
        degrees.into_iter().all(|n| self.matrix(n).rank() == self.target.dim(n))
    }
}
