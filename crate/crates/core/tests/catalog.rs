use ratloop::catalog::{catalog, example, lookup, AlgebraSpec, PairSpec, SpecFile, Subject};
use ratloop::cdga::{verify_quasi_isomorphism, DGAlgebra};
use ratloop::error::Error;

fn same_algebra(a: &DGAlgebra, b: &DGAlgebra, top: i32) {
    assert_eq!(a.generators(), b.generators());
    for k in 0..=top + 1 {
        assert_eq!(a.basis(k).monomials, b.basis(k).monomials, "{} degree {k}", a.name());
        assert_eq!(a.differential_matrix(k), b.differential_matrix(k));
        for i in 0..a.n_generators() {
            assert_eq!(a.left_mult_matrix(&a.generator(i), k).unwrap(), b.left_mult_matrix(&b.generator(i), k).unwrap());
        }
    }
}

fn same_subject(x: &Subject, y: &Subject) {
    let pairs = match (x, y) {
        (Subject::Algebra(a), Subject::Algebra(b)) => vec![(a, b)],
        (Subject::Morphism { source: s1, target: t1, f: f1 }, Subject::Morphism { source: s2, target: t2, f: f2 }) => {
            let top = s1.algebra.top_degree().unwrap();
            for k in 0..=top {
                assert_eq!(f1.matrix(k), f2.matrix(k));
            }
            vec![(s1, s2), (t1, t2)]
        }
        _ => panic!("kinds differ"),
    };
    for (a, b) in pairs {
        let top = a.algebra.top_degree().unwrap();
        same_algebra(&a.algebra, &b.algebra, top);
        let (da, db) = (a.duality.as_ref().unwrap(), b.duality.as_ref().unwrap());
        assert_eq!(da.pd().orientation(), db.pd().orientation());
        let (ma, mb) = (a.model.as_ref().unwrap(), b.model.as_ref().unwrap());
        same_algebra(ma.source(), mb.source(), top + 2);
        for k in 0..=top + 2 {
            assert_eq!(ma.matrix(k), mb.matrix(k));
        }
    }
}

#[test]
fn names_are_unique_and_cover_the_families() {
    let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    for n in ["s2", "s7", "cp4", "cp1_in_cp3", "cp2_in_cp4", "s3_deg2", "cp2_deg3", "s2xs4", "s2xs4_to_s6_deg1", "s2xs2_swap"] {
        assert!(names.iter().any(|m| m == n), "{n}");
    }
    assert!(matches!(lookup("s9"), Err(Error::Parse(_))));
}

#[test]
fn every_entry_builds_with_a_valid_model() {
    for e in catalog() {
        let subject = e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let pd = subject.primary();
        let report = pd.duality.as_ref().unwrap().pd().check().unwrap();
        let q = verify_quasi_isomorphism(pd.model.as_ref().unwrap(), 0, report.formal_dim + 2).unwrap();
        assert!(q.is_quasi_isomorphism(), "{}", e.name);
        if let Subject::Morphism { .. } = subject {
            subject.setup().unwrap();
        }
    }
}

#[test]
fn two_sphere_entry() {
    let Subject::Algebra(a) = example("s2").unwrap() else { panic!() };
    let model = a.model.unwrap();
    let v = model.source();
    assert_eq!(v.generators().iter().map(|g| g.degree).collect::<Vec<_>>(), vec![2, 3]);
    assert_eq!(v.differential_of(1), &v.parse("x^2").unwrap());
    let dd = a.duality.unwrap();
    assert_eq!(dd.pd().epsilon(&a.algebra.parse("x").unwrap()), num::One::one());
}

#[test]
fn serialization_round_trips() {
    for e in catalog() {
        let text = e.spec.to_json();
        let parsed = SpecFile::from_json(&text).unwrap();
        assert_eq!(parsed, e.spec, "{}", e.name);
        let built = e.build().unwrap();
        let described = match &built {
            Subject::Algebra(a) => SpecFile::Algebra(AlgebraSpec::describe(a)),
            Subject::Morphism { .. } => SpecFile::Morphism(PairSpec::describe("source", "target", &built).unwrap()),
        };
        let rebuilt = SpecFile::from_json(&described.to_json()).unwrap().build(&e.name).unwrap();
        same_subject(&built, &rebuilt);
    }
}

#[test]
fn malformed_files_are_parse_errors() {
    for text in [
        "{",
        r#"{"generators": [{"name": "x", "degree": 2}], "bogus": 1}"#,
        r#"{"algebras": {}, "morphism": {"source": "a", "target": "b", "images": {}}}"#,
        r#"{"generators": [{"name": "x", "degree": 2}], "relations": ["x^"]}"#,
    ] {
        let r = SpecFile::from_json(text).and_then(|s| s.build("t").map(|_| ()));
        assert_eq!(r.unwrap_err().exit_code(), 2, "{text}");
    }
}

#[test]
fn morphism_file_with_rational_orientation() {
    let text = r#"{
        "algebras": {
            "A": {"generators": [{"name": "x", "degree": 2}], "relations": ["x^3"],
                  "orientation": {"degree": 4, "volume_monomial": "x^2", "value": "1/2"},
                  "sullivan_model": {"algebra": {"generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 5}],
                                                 "differential": {"y": "x^3"}, "kind": "sullivan"},
                                     "images": {"x": "x"}}},
            "B": {"generators": [{"name": "u", "degree": 2}], "relations": ["u^2"],
                  "orientation": {"degree": 2, "volume_monomial": "u", "value": 1}}
        },
        "morphism": {"source": "A", "target": "B", "images": {"x": "u"}}
    }"#;
    let subject = SpecFile::from_json(text).unwrap().build("file").unwrap();
    let setup = subject.setup().unwrap();
    // epsilon_A(x^2) = 1/2 rescales f_!: f_!(1) = 2x
    assert_eq!(setup.shriek.alpha(), setup.f.source().parse("2*x").unwrap());
}
