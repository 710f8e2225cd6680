use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use super::element::{Element, Generator, Monomial};
use super::parse::{parse_polynomial, RawPoly};
use crate::error::{Error, Result};
use crate::linalg::scalar::format_scalar;
use crate::linalg::{Scalar, SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Free graded-commutative algebra with a well-ordered differential.
    Sullivan,
    /// Quotient of a free algebra by a triangular relation set; bounded above.
    FiniteDimensional,
}

#[derive(Clone, Debug)]
struct RewriteRule {
    lead: Monomial,
    tail: Element,
}

/// Normal-form monomial basis of one degree.
#[derive(Clone, Debug)]
pub struct Basis {
    pub degree: i32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(degree: i32, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A commutative differential graded algebra given by generators, relations
/// and the values of the differential on generators.
pub struct DGAlgebra {
    name: String,
    generators: Vec<Generator>,
    relations: Vec<Element>,
    rules: Vec<RewriteRule>,
    differential: Vec<Element>,
    kind: AlgebraKind,
    top_degree: Option<i32>,
    bases: RwLock<BTreeMap<i32, Arc<Basis>>>,
}

impl fmt::Debug for DGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DGAlgebra")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("kind", &self.kind)
            .finish()
    }
}

/// Product of two free monomials with the Koszul sign of reordering the odd
/// generators. Returns `None` when an odd generator would appear twice.
pub(crate) fn free_mul(gens: &[Generator], a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let n = gens.len();
    let mut odd_after = vec![0u32; n + 1];
    for i in (0..n).rev() {
        let here = u32::from(gens[i].is_odd() && a.0[i] == 1);
        odd_after[i] = odd_after[i + 1] + here;
    }
    let mut swaps = 0u32;
    for i in 0..n {
        if gens[i].is_odd() && b.0[i] == 1 {
            if a.0[i] == 1 {
                return None;
            }
            swaps += odd_after[i + 1];
        }
    }
    let exps = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
    Some((swaps % 2 == 1, Monomial(exps)))
}

/// Normal form of an ordered word of generators in the free algebra.
pub(crate) fn free_word(gens: &[Generator], word: &[usize]) -> Option<(bool, Monomial)> {
    let mut neg = false;
    let mut acc = Monomial::one(gens.len());
    for &g in word {
        let (s, m) = free_mul(gens, &acc, &Monomial::generator(gens.len(), g))?;
        neg ^= s;
        acc = m;
    }
    Some((neg, acc))
}

fn free_element(gens: &[Generator], raw: &RawPoly) -> Element {
    let mut out = Element::zero();
    for t in raw {
        if let Some((neg, m)) = free_word(gens, &t.word) {
            out.add_term(if neg { -t.coeff.clone() } else { t.coeff.clone() }, m);
        }
    }
    out
}

/// All exponent vectors of total degree `n` over the generators flagged in
/// `include`, honouring odd exponents at most one and the given caps.
pub(crate) fn monomials_of_degree(
    gens: &[Generator],
    include: &[bool],
    caps: &[Option<u32>],
    n: i32,
) -> Vec<Monomial> {
    fn rec(
        gens: &[Generator],
        include: &[bool],
        caps: &[Option<u32>],
        i: usize,
        left: i32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == gens.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let g = &gens[i];
        let mut max = if include[i] { left / g.degree } else { 0 };
        if g.is_odd() {
            max = max.min(1);
        }
        if let Some(c) = caps[i] {
            max = max.min(c as i32);
        }
        for e in (0..=max.max(0)).rev() {
            cur[i] = e as u32;
            rec(gens, include, caps, i + 1, left - e * g.degree, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    let mut cur = vec![0; gens.len()];
    rec(gens, include, caps, 0, n, &mut cur, &mut out);
    out
}

impl DGAlgebra {
    /// Builds and validates an algebra.
    ///
    /// `kind = None` infers the kind: finite-dimensional when every even
    /// generator is truncated by some relation, Sullivan otherwise.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relations: Vec<RawPoly>,
        differential: Vec<RawPoly>,
        kind: Option<AlgebraKind>,
    ) -> Result<Self> {
        let name = name.into();
        if differential.len() != generators.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{name}: {} differential values for {} generators",
                differential.len(),
                generators.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.degree < 1 {
                return Err(Error::InvalidAlgebra(format!(
                    "{name}: generator {} has degree {} < 1",
                    g.name, g.degree
                )));
            }
            if !is_identifier(&g.name) {
                return Err(Error::InvalidAlgebra(format!("{name}: bad generator name `{}`", g.name)));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::InvalidAlgebra(format!("{name}: duplicate generator {}", g.name)));
            }
        }

        let rel_elems: Vec<Element> = relations
            .iter()
            .map(|r| free_element(&generators, r))
            .filter(|e| !e.is_zero())
            .collect();
        let mut rules = Vec::new();
        for r in &rel_elems {
            r.homogeneous_degree(&generators)?;
            let (lead, c) = r.terms().last().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
            let mut tail = r.clone();
            tail.add_term(-c.clone(), lead.clone());
            let tail = tail.scale(&(-Scalar::one() / c));
            rules.push(RewriteRule { lead, tail });
        }
        for (i, rule) in rules.iter().enumerate() {
            for (j, r) in rel_elems.iter().enumerate() {
                if i != j && r.terms().any(|(m, _)| rule.lead.divides(m)) {
                    return Err(Error::InvalidAlgebra(format!(
                        "{name}: relations are not triangular (relation {i} reduces relation {j})"
                    )));
                }
            }
        }

        let bounded = generators.iter().enumerate().all(|(i, g)| {
            g.is_odd() || rules.iter().any(|r| r.lead.0[i] > 0 && r.lead.0.iter().filter(|&&e| e > 0).count() == 1)
        });
        let kind = match kind {
            Some(AlgebraKind::Sullivan) if !rel_elems.is_empty() => {
                return Err(Error::InvalidAlgebra(format!("{name}: a Sullivan algebra has no relations")))
            }
            Some(AlgebraKind::FiniteDimensional) if !bounded => {
                return Err(Error::Unbounded(format!("{name}: some even generator is never truncated")))
            }
            Some(k) => k,
            None if bounded => AlgebraKind::FiniteDimensional,
            None if rel_elems.is_empty() => AlgebraKind::Sullivan,
            None => {
                return Err(Error::Unbounded(format!(
                    "{name}: relations given but some even generator is never truncated"
                )))
            }
        };
        let top_bound = (kind == AlgebraKind::FiniteDimensional).then(|| {
            generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    if g.is_odd() {
                        g.degree
                    } else {
                        let k = rules
                            .iter()
                            .filter(|r| r.lead.0.iter().filter(|&&e| e > 0).count() == 1 && r.lead.0[i] > 0)
                            .map(|r| r.lead.0[i])
                            .min()
                            .unwrap_or(1);
                        (k as i32 - 1) * g.degree
                    }
                })
                .sum::<i32>()
        });

        let mut alg = DGAlgebra {
            name,
            generators,
            relations: rel_elems,
            rules,
            differential: Vec::new(),
            kind,
            top_degree: None,
            bases: RwLock::new(BTreeMap::new()),
        };
        alg.differential = differential.iter().map(|raw| alg.normal_form(raw)).collect();
        if let Some(b) = top_bound {
            alg.top_degree = (0..=b).rev().find(|&q| !alg.basis(q).is_empty());
        }
        alg.validate_differential()?;
        Ok(alg)
    }

    /// Convenience constructor from polynomial strings.
    pub fn from_strings(
        name: &str,
        generators: &[(&str, i32)],
        relations: &[&str],
        differential: &[(&str, &str)],
        kind: Option<AlgebraKind>,
    ) -> Result<Self> {
        let gens: Vec<Generator> = generators.iter().map(|(n, d)| Generator::new(*n, *d)).collect();
        let lookup = |s: &str| gens.iter().position(|g| g.name == s);
        let rels = relations.iter().map(|r| parse_polynomial(r, &lookup)).collect::<Result<Vec<_>>>()?;
        let mut diff = vec![Vec::new(); gens.len()];
        for (g, v) in differential {
            let i = lookup(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            diff[i] = parse_polynomial(v, &lookup)?;
        }
        DGAlgebra::new(name, gens, rels, diff, kind)
    }

    fn validate_differential(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            let dg = &self.differential[i];
            match dg.homogeneous_degree(&self.generators)? {
                Some(d) if d != g.degree + 1 => {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}: d{} has degree {d}, expected {}",
                        self.name,
                        g.name,
                        g.degree + 1
                    )))
                }
                _ => {}
            }
            if self.kind == AlgebraKind::Sullivan {
                if let Some((m, _)) = dg.terms().find(|(m, _)| m.0[i..].iter().any(|&e| e > 0)) {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}: d{} = ... {} ... uses a generator that is not earlier in the order",
                        self.name,
                        g.name,
                        self.format_monomial(m)
                    )));
                }
            }
            let dd = self.d(dg);
            if !dd.is_zero() {
                return Err(Error::Invariant(format!(
                    "{}: d^2 {} = {} is not zero",
                    self.name,
                    g.name,
                    self.format(&dd)
                )));
            }
        }
        for r in &self.relations {
            let mut dr = Element::zero();
            for (m, c) in r.terms() {
                dr.add_scaled(c, &self.d_free_monomial(m));
            }
            if !dr.is_zero() {
                return Err(Error::InvalidAlgebra(format!(
                    "{}: the differential does not preserve the relation {}",
                    self.name,
                    self.format(r)
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == AlgebraKind::FiniteDimensional
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_empty()
    }

    /// Highest nonzero degree of a finite-dimensional algebra.
    pub fn top_degree(&self) -> Option<i32> {
        self.top_degree
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// `d` applied to generator `i`.
    pub fn differential_of(&self, i: usize) -> &Element {
        &self.differential[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(|e| e.is_zero())
    }

    pub fn one(&self) -> Element {
        Element::monomial(Monomial::one(self.n_generators()))
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::monomial(Monomial::generator(self.n_generators(), i))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i32 {
        m.degree(&self.generators)
    }

    pub fn degree_of(&self, e: &Element) -> Result<Option<i32>> {
        e.homogeneous_degree(&self.generators)
    }

    fn reduce_into(&self, coeff: Scalar, m: Monomial, out: &mut Element) {
        let Some(rule) = self.rules.iter().find(|r| r.lead.divides(&m)) else {
            out.add_term(coeff, m);
            return;
        };
        let q = rule.lead.quotient_of(&m);
        let (neg, prod) = free_mul(&self.generators, &rule.lead, &q).expect("factorisation of a nonzero monomial");
        debug_assert_eq!(prod, m);
        let c = if neg { -coeff } else { coeff };
        for (t, tc) in rule.tail.terms() {
            if let Some((neg2, tm)) = free_mul(&self.generators, t, &q) {
                let cc = &c * tc;
                self.reduce_into(if neg2 { -cc } else { cc }, tm, out);
            }
        }
    }

    fn reduce(&self, e: &Element) -> Element {
        if self.rules.is_empty() {
            return e.clone();
        }
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            self.reduce_into(c.clone(), m.clone(), &mut out);
        }
        out
    }

    /// Normal form of a raw list of ordered products: sorted monomials,
    /// Koszul signs applied, relations reduced.
    pub fn normal_form(&self, raw: &RawPoly) -> Element {
        self.reduce(&free_element(&self.generators, raw))
    }

    /// Parses a polynomial string in this algebra's generators.
    pub fn parse(&self, s: &str) -> Result<Element> {
        let raw = parse_polynomial(s, &|n: &str| self.generator_index(n))?;
        Ok(self.normal_form(&raw))
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        match free_mul(&self.generators, a, b) {
            None => Element::zero(),
            Some((neg, m)) => {
                let mut out = Element::zero();
                self.reduce_into(if neg { -Scalar::one() } else { Scalar::one() }, m, &mut out);
                out
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((neg, m)) = free_mul(&self.generators, ma, mb) {
                    let c = ca * cb;
                    self.reduce_into(if neg { -c } else { c }, m, &mut out);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn d_free_monomial(&self, m: &Monomial) -> Element {
        let images: Vec<Element> = (0..self.n_generators()).map(|i| self.generator(i)).collect();
        super::derivation::leibniz_expand(self, &self.generators, &m.word(), &self.differential, &images, true)
    }

    /// The differential, extended by the Leibniz rule.
    pub fn d(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(c, &self.d_free_monomial(m));
        }
        out
    }

    /// Monomial basis of degree `n`, cached.
    pub fn basis(&self, n: i32) -> Arc<Basis> {
        if let Some(b) = self.bases.read().expect("basis cache").get(&n) {
            return b.clone();
        }
        let caps = vec![None; self.n_generators()];
        let include = vec![true; self.n_generators()];
        let monomials: Vec<Monomial> = if n < 0 || self.top_degree.is_some_and(|t| n > t) {
            Vec::new()
        } else {
            let mut ms: Vec<Monomial> = monomials_of_degree(&self.generators, &include, &caps, n)
                .into_iter()
                .filter(|m| !self.rules.iter().any(|r| r.lead.divides(m)))
                .collect();
            ms.sort();
            ms
        };
        let b = Arc::new(Basis::new(n, monomials));
        self.bases.write().expect("basis cache").insert(n, b.clone());
        b
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).len()
    }

    /// Coordinates of a homogeneous element of degree `n`.
    pub fn coords(&self, e: &Element, n: i32) -> Result<SparseVec> {
        let basis = self.basis(n);
        let mut entries = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            let i = basis.index_of(m).ok_or_else(|| {
                Error::DegreeMismatch(format!(
                    "{} is not a basis monomial of degree {n} in {}",
                    self.format_monomial(m),
                    self.name
                ))
            })?;
            entries.push((i, c.clone()));
        }
        Ok(SparseVec::from_entries(entries))
    }

    pub fn from_coords(&self, n: i32, v: &SparseVec) -> Element {
        let basis = self.basis(n);
        Element::from_terms(v.iter().map(|(i, c)| (basis.monomials[i].clone(), c.clone())))
    }

    /// Matrix of a linear map from degree `src` of `self` to degree `tgt` of
    /// `target`, given by its values on basis monomials.
    pub fn matrix_of(
        &self,
        src: i32,
        target: &DGAlgebra,
        tgt: i32,
        f: impl Fn(&Monomial) -> Element,
    ) -> Result<SparseMatrix> {
        let cols = self
            .basis(src)
            .monomials
            .iter()
            .map(|m| target.coords(&f(m), tgt))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(target.dim(tgt), &cols))
    }

    /// Matrix of `d : A^n -> A^{n+1}`.
    pub fn differential_matrix(&self, n: i32) -> SparseMatrix {
        self.matrix_of(n, self, n + 1, |m| self.d(&Element::monomial(m.clone())))
            .expect("differential is homogeneous of degree one")
    }

    /// Matrix of `b -> a*b` from degree `n`, for homogeneous `a`.
    pub fn left_mult_matrix(&self, a: &Element, n: i32) -> Result<SparseMatrix> {
        let da = self.degree_of(a)?.unwrap_or(0);
        self.matrix_of(n, self, n + da, |m| self.mul(a, &Element::monomial(m.clone())))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.generators[i].name.clone()
                } else {
                    format!("{}^{e}", self.generators[i].name)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Renders an element in the polynomial grammar accepted by [`DGAlgebra::parse`].
    pub fn format(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in e.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if m.is_one() {
                out.push_str(&format_scalar(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_scalar(&abs)));
            }
        }
        out
    }

    /// Whether the constant term vanishes in positive degrees and `A^0 = Q`.
    pub fn is_connected(&self) -> bool {
        self.dim(0) == 1
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn xy() -> DGAlgebra {
        DGAlgebra::from_strings("s2", &[("x", 2), ("y", 3)], &[], &[("y", "x^2")], Some(AlgebraKind::Sullivan))
            .unwrap()
    }

    #[test]
    fn even_odd_commute() {
        let a = xy();
        assert_eq!(a.parse("y*x").unwrap(), a.parse("x*y").unwrap());
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = DGAlgebra::from_strings("e", &[("u", 3), ("v", 5)], &[], &[], None).unwrap();
        let uv = a.parse("u*v").unwrap();
        let vu = a.parse("v*u").unwrap();
        assert_eq!(vu, uv.neg());
        assert!(a.parse("u*u").unwrap().is_zero());
    }

    #[test]
    fn truncation_kills_power() {
        let a = DGAlgebra::from_strings("cp2", &[("x", 2)], &["x^3"], &[], None).unwrap();
        assert!(a.parse("x^3").unwrap().is_zero());
        assert_eq!(a.kind(), AlgebraKind::FiniteDimensional);
        assert_eq!(a.top_degree(), Some(4));
    }

    #[test]
    fn bases() {
        let cp3 = DGAlgebra::from_strings("cp3", &[("x", 2)], &["x^4"], &[], None).unwrap();
        assert_eq!(cp3.basis(4).monomials, vec![Monomial(vec![2])]);
        assert!(cp3.basis(1).is_empty());
        let a = xy();
        assert_eq!(a.basis(5).monomials, vec![Monomial(vec![1, 1])]);
        assert!(a.basis(1).is_empty());
    }

    #[test]
    fn polynomial_relation_reduces() {
        // x^2 = 2*z with z of degree 4, truncated by z^2
        let a = DGAlgebra::from_strings("q", &[("x", 2), ("z", 4)], &["x^2 - 2*z", "z^2"], &[], None).unwrap();
        assert_eq!(a.parse("x^2").unwrap(), a.parse("2*z").unwrap());
        assert!(a.parse("x^4").unwrap().is_zero());
        assert_eq!(a.dim(4), 1);
        assert_eq!(a.parse("x^3").unwrap(), a.parse("2*x*z").unwrap());
    }

    #[test]
    fn non_triangular_rejected() {
        let r = DGAlgebra::from_strings("bad", &[("x", 2), ("y", 2)], &["x^2 - y^2", "x^3"], &[], None);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn differential_checks() {
        let a = xy();
        assert_eq!(a.d(&a.parse("x*y").unwrap()), a.parse("x^3").unwrap());
        let bad = DGAlgebra::from_strings("b", &[("x", 2), ("y", 3)], &[], &[("y", "x")], None);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
        let late = DGAlgebra::from_strings(
            "late",
            &[("y", 3), ("x", 2)],
            &[],
            &[("y", "x^2")],
            Some(AlgebraKind::Sullivan),
        );
        assert!(matches!(late, Err(Error::InvalidAlgebra(_))));
        let unknown = DGAlgebra::from_strings("u", &[("x", 2)], &[], &[("x", "q")], None);
        assert_eq!(unknown.unwrap_err(), Error::UnknownGenerator("q".into()));
    }

    #[test]
    fn format_round_trips() {
        let a = xy();
        let e = a.parse("3/2*x^2 - x*y + 1").unwrap();
        assert_eq!(a.parse(&a.format(&e)).unwrap(), e);
        assert_eq!(e.coefficient(&Monomial(vec![0, 0])), int(1));
    }
}
