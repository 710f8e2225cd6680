//! Built-in examples, written as the same presentations an input file holds.

use std::collections::BTreeMap;

use super::spec::{
    AlgebraSpec, GeneratorSpec, KindSpec, MorphismSpec, OrientationSpec, PairSpec, ScalarSpec, SpecFile, Subject,
    SullivanModelSpec,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub spec: SpecFile,
}

fn gens(list: &[(&str, i32)]) -> Vec<GeneratorSpec> {
    list.iter().map(|(n, d)| GeneratorSpec { name: n.to_string(), degree: *d }).collect()
}

fn map(list: &[(&str, &str)]) -> BTreeMap<String, String> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn sullivan(name: &str, generators: &[(&str, i32)], differential: &[(&str, &str)]) -> AlgebraSpec {
    AlgebraSpec {
        name: Some(name.to_string()),
        generators: gens(generators),
        relations: Vec::new(),
        differential: map(differential),
        orientation: None,
        kind: Some(KindSpec::Sullivan),
        sullivan_model: None,
    }
}

fn finite(name: &str, generators: &[(&str, i32)], relations: &[&str], volume: &str, top: i32) -> AlgebraSpec {
    AlgebraSpec {
        name: Some(name.to_string()),
        generators: gens(generators),
        relations: relations.iter().map(|r| r.to_string()).collect(),
        differential: BTreeMap::new(),
        orientation: Some(OrientationSpec { degree: top, volume_monomial: volume.into(), value: ScalarSpec::Int(1) }),
        kind: Some(KindSpec::Finite),
        sullivan_model: None,
    }
}

/// `H*(S^n)` with its minimal model.
pub fn sphere(n: i32, x: &str) -> AlgebraSpec {
    let name = format!("s{n}");
    if n % 2 == 1 {
        let mut a = finite(&name, &[(x, n)], &[], x, n);
        a.sullivan_model = Some(SullivanModelSpec {
            algebra: Box::new(sullivan(&format!("{name}_model"), &[(x, n)], &[])),
            images: map(&[(x, x)]),
        });
        a
    } else {
        let y = format!("{x}_odd");
        let sq = format!("{x}^2");
        let mut a = finite(&name, &[(x, n)], &[&sq], x, n);
        a.sullivan_model = Some(SullivanModelSpec {
            algebra: Box::new(sullivan(&format!("{name}_model"), &[(x, n), (&y, 2 * n - 1)], &[(&y, &sq)])),
            images: map(&[(x, x)]),
        });
        a
    }
}

/// `H*(CP^n) = Q[x]/(x^{n+1})` with its minimal model.
pub fn projective(n: i32, x: &str) -> AlgebraSpec {
    let name = format!("cp{n}");
    let rel = format!("{x}^{}", n + 1);
    let vol = if n == 1 { x.to_string() } else { format!("{x}^{n}") };
    let y = format!("{x}_odd");
    let mut a = finite(&name, &[(x, 2)], &[&rel], &vol, 2 * n);
    a.sullivan_model = Some(SullivanModelSpec {
        algebra: Box::new(sullivan(&format!("{name}_model"), &[(x, 2), (&y, 2 * n + 1)], &[(&y, &rel)])),
        images: map(&[(x, x)]),
    });
    a
}

/// `H*(S^p x S^q)` for even `p`, `q`, with generators `a`, `b`.
fn even_product(p: i32, q: i32) -> AlgebraSpec {
    let name = format!("s{p}xs{q}");
    let mut a = finite(&name, &[("a", p), ("b", q)], &["a^2", "b^2"], "a*b", p + q);
    a.sullivan_model = Some(SullivanModelSpec {
        algebra: Box::new(sullivan(
            &format!("{name}_model"),
            &[("a", p), ("a_odd", 2 * p - 1), ("b", q), ("b_odd", 2 * q - 1)],
            &[("a_odd", "a^2"), ("b_odd", "b^2")],
        )),
        images: map(&[("a", "a"), ("b", "b")]),
    });
    a
}

fn pair(source: AlgebraSpec, target: AlgebraSpec, images: &[(&str, &str)]) -> SpecFile {
    let (sk, tk) = ("source".to_string(), "target".to_string());
    SpecFile::Morphism(PairSpec {
        algebras: BTreeMap::from([(sk.clone(), source), (tk.clone(), target)]),
        morphism: MorphismSpec { source: sk, target: tk, images: map(images) },
    })
}

fn entry(name: String, description: String, spec: SpecFile) -> CatalogEntry {
    CatalogEntry { name, description, spec }
}

/// Every built-in example, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(entry(format!("s{n}"), format!("cohomology of the {n}-sphere"), SpecFile::Algebra(sphere(n, "x"))));
    }
    for n in 1..=4 {
        out.push(entry(
            format!("cp{n}"),
            format!("cohomology of complex projective {n}-space"),
            SpecFile::Algebra(projective(n, "x")),
        ));
    }
    for total in 2..=4 {
        for n in 1..total {
            out.push(entry(
                format!("cp{n}_in_cp{total}"),
                format!("restriction along CP^{n} in CP^{total}, x -> y"),
                pair(projective(total, "x"), projective(n, "y"), &[("x", "y")]),
            ));
        }
    }
    for n in 2..=7 {
        for d in 0..=3 {
            let image = format!("{d}*x");
            out.push(entry(
                format!("s{n}_deg{d}"),
                format!("self map of the {n}-sphere of degree {d}"),
                pair(sphere(n, "x"), sphere(n, "x"), &[("x", &image)]),
            ));
        }
    }
    for n in 1..=4 {
        for d in 0..=3i64 {
            let image = format!("{d}*x");
            out.push(entry(
                format!("cp{n}_deg{d}"),
                format!("self map of CP^{n} with x -> {d} x (mapping degree {})", d.pow(n as u32)),
                pair(projective(n, "x"), projective(n, "x"), &[("x", &image)]),
            ));
        }
    }
    out.push(entry("s2xs4".into(), "cohomology of S^2 x S^4".into(), SpecFile::Algebra(even_product(2, 4))));
    out.push(entry("s2xs2".into(), "cohomology of S^2 x S^2".into(), SpecFile::Algebra(even_product(2, 2))));
    for d in 1..=2 {
        let image = format!("{d}*a*b");
        out.push(entry(
            format!("s2xs4_to_s6_deg{d}"),
            format!("collapse S^2 x S^4 -> S^6 of degree {d}, z -> {d} ab"),
            pair(sphere(6, "z"), even_product(2, 4), &[("z", &image)]),
        ));
    }
    out.push(entry(
        "s2xs2_swap".into(),
        "the factor swap of S^2 x S^2".into(),
        pair(even_product(2, 2), even_product(2, 2), &[("a", "b"), ("b", "a")]),
    ));
    out
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Parse(format!("no catalog entry named `{name}`")))
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Subject> {
        self.spec.build(&self.name)
    }
}

/// Builds the named example.
pub fn example(name: &str) -> Result<Subject> {
    lookup(name)?.build()
}
