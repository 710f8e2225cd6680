use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cdga::derivation::leibniz_expand;
use crate::cdga::{betti_numbers, cochain_window, AlgebraKind, DGAlgebra, Element, Generator, Monomial, RawPoly, RawTerm};
use crate::error::{Error, Result};

/// The free loop space model `(AV (x) A Vbar, D)` of a Sullivan algebra
/// `(AV, d)`: `|vbar| = |v| - 1`, `Dv = dv`, `Dvbar = -S(dv)` where `S` is the
/// degree `-1` derivation with `S(v) = vbar` and `S(vbar) = 0`.
///
/// Generators of the total algebra are those of `V` followed by their bars,
/// so a normal-form monomial splits as a `V`-part times a `Vbar`-part
/// without a sign.
#[derive(Debug)]
pub struct LoopModel {
    base: Arc<DGAlgebra>,
    total: Arc<DGAlgebra>,
}

/// Name of the barred copy of a generator.
pub fn bar_name(name: &str) -> String {
    format!("{name}_bar")
}

impl LoopModel {
    pub fn new(base: Arc<DGAlgebra>) -> Result<Self> {
        if base.kind() != AlgebraKind::Sullivan {
            return Err(Error::Hypothesis(format!("{} is not a Sullivan algebra", base.name())));
        }
        if let Some(g) = base.generators().iter().find(|g| g.degree < 2) {
            return Err(Error::Hypothesis(format!(
                "generator {} has degree {}; the loop model needs a simply connected algebra",
                g.name, g.degree
            )));
        }
        let n = base.n_generators();
        let mut gens: Vec<Generator> = base.generators().to_vec();
        for g in base.generators() {
            let name = bar_name(&g.name);
            if base.generator_index(&name).is_some() {
                return Err(Error::InvalidAlgebra(format!("generator name {name} clashes with a barred generator")));
            }
            gens.push(Generator::new(name, g.degree - 1));
        }
        let embed = |e: &Element| -> Element {
            Element::from_terms(e.terms().map(|(m, c)| {
                let mut ex = m.0.clone();
                ex.resize(2 * n, 0);
                (Monomial(ex), c.clone())
            }))
        };
        let mut diff: Vec<Element> = (0..n).map(|i| embed(base.differential_of(i))).collect();
        // S(dv) only involves AV, but lands in the total algebra, which does
        // not exist yet; expand inside the free algebra on the same generators.
        let scratch =
            DGAlgebra::new("scratch", gens.clone(), Vec::new(), vec![Vec::new(); 2 * n], Some(AlgebraKind::Sullivan))?;
        let s_values: Vec<Element> =
            (0..2 * n).map(|i| if i < n { scratch.generator(n + i) } else { Element::zero() }).collect();
        let images: Vec<Element> = (0..2 * n).map(|i| scratch.generator(i)).collect();
        for i in 0..n {
            let mut sdv = Element::zero();
            for (m, c) in diff[i].terms() {
                sdv.add_scaled(c, &leibniz_expand(&scratch, &gens, &m.word(), &s_values, &images, true));
            }
            diff.push(sdv.neg());
        }
        let raw: Vec<RawPoly> = diff.iter().map(to_raw).collect();
        let total = DGAlgebra::new(format!("L{}", base.name()), gens, Vec::new(), raw, Some(AlgebraKind::Sullivan))
            .map_err(|e| match e {
                Error::Invariant(msg) => Error::Invariant(format!("loop model differential: {msg}")),
                other => other,
            })?;
        let lm = LoopModel { base, total: Arc::new(total) };
        for i in 0..2 * n {
            let dg = lm.total.differential_of(i);
            let len = u32::from(i >= n);
            if dg.terms().any(|(m, _)| lm.bar_length(m) != len) {
                return Err(Error::Invariant(format!(
                    "D does not preserve the bar word length on {}",
                    lm.total.generators()[i].name
                )));
            }
        }
        Ok(lm)
    }

    pub fn base(&self) -> &Arc<DGAlgebra> {
        &self.base
    }

    pub fn total(&self) -> &Arc<DGAlgebra> {
        &self.total
    }

    pub fn n_base(&self) -> usize {
        self.base.n_generators()
    }

    /// Index in the total algebra of the bar of base generator `i`.
    pub fn bar_index(&self, i: usize) -> usize {
        self.n_base() + i
    }

    /// Number of barred factors of a total-algebra monomial.
    pub fn bar_length(&self, m: &Monomial) -> u32 {
        m.0[self.n_base()..].iter().sum()
    }

    /// Splits `a * w` into its `AV` part (as a base monomial) and its
    /// `AVbar` part (as a total monomial).
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let n = self.n_base();
        let a = Monomial(m.0[..n].to_vec());
        let mut w = m.0.clone();
        w[..n].iter_mut().for_each(|e| *e = 0);
        (a, Monomial(w))
    }

    /// Total-algebra monomials in barred generators only, of degree `q`.
    pub fn bar_monomials(&self, q: i32) -> Vec<Monomial> {
        let n = self.n_base();
        let gens = self.total.generators();
        let include: Vec<bool> = (0..2 * n).map(|i| i >= n).collect();
        let caps = vec![None; 2 * n];
        let mut out = crate::cdga::algebra::monomials_of_degree(gens, &include, &caps, q);
        out.sort();
        out
    }

    /// The derivation `S`: `S(v) = vbar`, `S(vbar) = 0`.
    pub fn s(&self, e: &Element) -> Element {
        let n = self.n_base();
        let gens = self.total.generators();
        let values: Vec<Element> = (0..2 * n)
            .map(|i| if i < n { self.total.generator(n + i) } else { Element::zero() })
            .collect();
        let images: Vec<Element> = (0..2 * n).map(|i| self.total.generator(i)).collect();
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(c, &leibniz_expand(&self.total, gens, &m.word(), &values, &images, true));
        }
        out
    }

    /// Embeds an element of the base algebra.
    pub fn embed(&self, e: &Element) -> Element {
        let n2 = 2 * self.n_base();
        Element::from_terms(e.terms().map(|(m, c)| {
            let mut ex = m.0.clone();
            ex.resize(n2, 0);
            (Monomial(ex), c.clone())
        }))
    }

    /// Betti numbers of the loop model in degrees `lo..=hi`.
    pub fn cohomology(&self, lo: i32, hi: i32) -> Result<BTreeMap<i32, usize>> {
        betti_numbers(&self.total, lo, hi)
    }

    /// Betti numbers split by bar word length, which `D` preserves.
    pub fn hodge(&self, lo: i32, hi: i32) -> Result<BTreeMap<u32, BTreeMap<i32, usize>>> {
        let c = cochain_window(&self.total, lo - 1, hi + 1)?;
        let mut by_len: BTreeMap<u32, BTreeMap<i32, Vec<usize>>> = BTreeMap::new();
        for k in lo - 1..=hi + 1 {
            for (j, m) in self.total.basis(k).monomials.iter().enumerate() {
                let len = self.bar_length(m);
                by_len.entry(len).or_default().entry(k).or_default().push(j);
            }
        }
        let mut out = BTreeMap::new();
        for (len, select) in &by_len {
            let sub = c.subcomplex(select)?;
            let betti: BTreeMap<i32, usize> =
                (lo..=hi).map(|k| Ok((k, sub.cohomology(k)?.betti))).collect::<Result<_>>()?;
            if betti.values().any(|&b| b > 0) {
                out.insert(*len, betti);
            }
        }
        Ok(out)
    }
}

/// Raw polynomial of an element already in normal form.
pub(crate) fn to_raw(e: &Element) -> RawPoly {
    e.terms().map(|(m, c)| RawTerm { coeff: c.clone(), word: m.word() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Arc<DGAlgebra> {
        Arc::new(
            DGAlgebra::from_strings("s2", &[("x", 2), ("y", 3)], &[], &[("y", "x^2")], Some(AlgebraKind::Sullivan))
                .unwrap(),
        )
    }

    #[test]
    fn odd_sphere_has_zero_differential() {
        let s3 = Arc::new(DGAlgebra::from_strings("s3", &[("x", 3)], &[], &[], Some(AlgebraKind::Sullivan)).unwrap());
        let lm = LoopModel::new(s3).unwrap();
        assert!(lm.total().has_zero_differential());
        assert_eq!(lm.total().generators()[1], Generator::new("x_bar", 2));
    }

    #[test]
    fn two_sphere_bar_differential() {
        let lm = LoopModel::new(s2()).unwrap();
        let t = lm.total();
        assert!(t.differential_of(2).is_zero());
        assert_eq!(t.differential_of(3), &t.parse("-2*x*x_bar").unwrap());
    }

    #[test]
    fn s_is_square_zero_derivation() {
        let lm = LoopModel::new(s2()).unwrap();
        let t = lm.total();
        for i in 0..4 {
            assert!(lm.s(&lm.s(&t.generator(i))).is_zero());
        }
        let a = t.parse("x*y").unwrap();
        let b = t.parse("x^2 + y_bar").unwrap();
        let lhs = lm.s(&t.mul(&a, &b));
        let rhs = t.mul(&lm.s(&a), &b).add(&t.mul(&a, &lm.s(&b)).scale(&crate::linalg::scalar::sign(5)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn name_clash_rejected() {
        let a = Arc::new(
            DGAlgebra::from_strings("c", &[("x", 2), ("x_bar", 3)], &[], &[], Some(AlgebraKind::Sullivan)).unwrap(),
        );
        assert!(matches!(LoopModel::new(a), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn loop_space_of_three_sphere() {
        let s3 = Arc::new(DGAlgebra::from_strings("s3", &[("x", 3)], &[], &[], Some(AlgebraKind::Sullivan)).unwrap());
        let b = LoopModel::new(s3).unwrap().cohomology(0, 12).unwrap();
        for (k, betti) in b {
            assert_eq!(betti, usize::from(k != 1), "degree {k}");
        }
    }
}
