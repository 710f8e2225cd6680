use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num::Zero;

use crate::linalg::Scalar;

/// A graded generator. The parity of the generator is that of its degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Self { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Exponent vector indexed by generator position. Odd generators carry
/// exponent at most one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n_generators: usize) -> Self {
        Monomial(vec![0; n_generators])
    }

    pub fn generator(n_generators: usize, i: usize) -> Self {
        let mut e = vec![0; n_generators];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree(&self, generators: &[Generator]) -> i32 {
        self.0.iter().zip(generators).map(|(&e, g)| e as i32 * g.degree).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    /// The generators of the monomial as an ordered word, repeated by exponent.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }
}

/// A finite rational combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: Scalar, m: Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(coeff, m);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(num::One::one(), m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(c, m);
        }
        e
    }

    pub fn add_term(&mut self, coeff: Scalar, m: Monomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, coeff: &Scalar, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(coeff * c, m.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-<Scalar as num::One>::one())
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&num::One::one(), other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-<Scalar as num::One>::one(), other);
        out
    }

    /// The common degree of all terms, `None` for zero, error when mixed.
    pub fn homogeneous_degree(&self, generators: &[Generator]) -> Result<Option<i32>, crate::Error> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(generators);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(crate::Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Projection to the terms of one degree.
    pub fn component(&self, generators: &[Generator], degree: i32) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(generators) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}
