use std::collections::BTreeMap;

use super::complex::HochschildComplex;
use crate::cdga::{Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{Scalar, SparseVec};

/// `Delta(w) = sum c w' (x) w''` for the algebra map with
/// `Delta(vbar) = vbar (x) 1 + 1 (x) vbar`, where
/// `(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd`.
pub fn diagonal(hc: &HochschildComplex, w: &Monomial) -> Vec<(Scalar, Monomial, Monomial)> {
    let total = hc.loop_model().total();
    let gens = total.generators();
    let n = total.n_generators();
    let mut terms: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
    terms.insert((Monomial::one(n), Monomial::one(n)), num::One::one());
    for u in w.word() {
        let um = Monomial::generator(n, u);
        let du = gens[u].degree;
        let mut next: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
        for ((p, q), c) in &terms {
            let s = sign((q.degree(gens) * du) as i64);
            for (pu, c1) in total.mul_monomials(p, &um).terms() {
                *next.entry((pu.clone(), q.clone())).or_insert_with(num::Zero::zero) += c * c1 * &s;
            }
            for (qu, c1) in total.mul_monomials(q, &um).terms() {
                *next.entry((p.clone(), qu.clone())).or_insert_with(num::Zero::zero) += c * c1;
            }
        }
        next.retain(|_, c| !num::Zero::is_zero(c));
        terms = next;
    }
    terms.into_iter().map(|((p, q), c)| (c, p, q)).collect()
}

/// `(g1 u g2)(w) = sum c (-1)^{k2 |w'|} g1(w') g2(w'')` for cochains of
/// degrees `k1`, `k2` with coefficients in an algebra.
pub fn cup_product(hc: &HochschildComplex, k1: i32, g1: &SparseVec, k2: i32, g2: &SparseVec) -> Result<SparseVec> {
    let a = hc.module().algebra()?.clone();
    let k = k1 + k2;
    if !hc.has_degree(k) || !hc.has_degree(k1) || !hc.has_degree(k2) {
        return Err(Error::Dimension(format!("cup product of degrees {k1} and {k2} leaves the assembled range")));
    }
    let gens = hc.loop_model().total().generators();
    let value = |kk: i32, g: &SparseVec, w: &Monomial| -> Element {
        match hc.block_of(kk, w) {
            Some(b) => {
                let x = g.reindex(|i| (b.offset <= i && i < b.offset + b.len).then(|| i - b.offset));
                a.from_coords(b.value_degree, &x)
            }
            None => Element::zero(),
        }
    };
    let mut values = Vec::new();
    for b in hc.blocks(k) {
        let mut acc = Element::zero();
        for (c, w1, w2) in diagonal(hc, &b.word) {
            let v1 = value(k1, g1, &w1);
            if v1.is_zero() {
                continue;
            }
            let v2 = value(k2, g2, &w2);
            let s = sign((k2 * w1.degree(gens)) as i64) * c;
            acc.add_scaled(&s, &a.mul(&v1, &v2));
        }
        values.push((b.word.clone(), a.coords(&acc, b.value_degree)?));
    }
    hc.from_values(k, &values)
}
