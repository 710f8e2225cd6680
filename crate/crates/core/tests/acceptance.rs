//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{BigRational, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratloop::catalog::{catalog, example, Subject};
use ratloop::cdga::{AlgebraKind, AlgebraMorphism, DGAlgebra, Element};
use ratloop::derivations::{
    compute_splitting, mapping_space_report, verify_injection_theorem, verify_theorem2, DerivationComplex,
};
use ratloop::hochschild::{
    corollary_shriek_on_homology, cp_small_complex_oracle, verify_theorem1, CoefficientModule, HochschildComplex,
    LoopModel,
};
use ratloop::linalg::SparseMatrix;
use ratloop::poincare::{degree_scalar, Shriek};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rank by plain dense Gaussian elimination.
fn dense_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for j in c..ncols {
                    let v = &rows[rank][j] * &f;
                    rows[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn default_window(m: i32) -> (i32, i32) {
    (-m, 2 * m + 4)
}

fn formal_dim(s: &Subject) -> i32 {
    s.primary().duality.as_ref().unwrap().formal_dim()
}

/// HH(f_!) HH(f) = x* . at chain level on the projective inclusions.
fn criterion_1() -> Result<String, String> {
    let mut notes = Vec::new();
    for (n, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let name = format!("cp{n}_in_cp{}", n + k);
        let setup = example(&name).unwrap().setup().unwrap();
        let (lo, hi) = (-2 * (n + k), 2 * (n + k) + 4);
        let start = Instant::now();
        let rec = verify_theorem1(&setup, lo, hi).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        let cochains: usize = rec.degrees.iter().map(|d| d.cochains).sum();
        if !rec.holds() {
            let bad = rec.degrees.iter().find(|d| d.mismatches > 0);
            return Err(format!("{name}: {bad:?}"));
        }
        if rec.window != (lo, hi) || cochains == 0 {
            return Err(format!("{name}: window {:?} with {cochains} cochains", rec.window));
        }
        if elapsed > Duration::from_secs(60) {
            return Err(format!("{name}: took {elapsed:?}"));
        }
        notes.push(format!("{name} {cochains} cochains"));
    }
    Ok(notes.join(", "))
}

/// `f_!(y^i) = x^{k+i}` for every projective inclusion in the catalog.
fn criterion_2() -> Result<String, String> {
    let mut count = 0;
    for total in 2..=4 {
        for n in 1..total {
            let k = total - n;
            let setup = example(&format!("cp{n}_in_cp{total}")).unwrap().setup().unwrap();
            let a = setup.f.source();
            let b = setup.f.target();
            let x = a.parse("x").unwrap();
            let y = b.parse("y").unwrap();
            for i in 0..=n {
                let lhs = setup.shriek.apply(&b.pow(&y, i as u32));
                let rhs = a.pow(&x, (k + i) as u32);
                if lhs != rhs || rhs.is_zero() {
                    return Err(format!("cp{n} in cp{total}: f_!(y^{i}) = {}", a.format(&lhs)));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} identities"))
}

const SELF_MAPS: [&str; 6] = ["s3_deg1", "s3_deg2", "s3_deg3", "cp2_deg1", "cp2_deg2", "cp2_deg3"];

fn criterion_3() -> Result<String, String> {
    for name in SELF_MAPS {
        let subject = example(name).unwrap();
        let (lo, hi) = default_window(formal_dim(&subject));
        let rec = verify_theorem2(&subject.setup().unwrap(), lo, hi).map_err(|e| format!("{name}: {e}"))?;
        if !(rec.injective() && rec.retraction_exact && rec.splitting_verified) {
            return Err(format!("{name}: {rec:?}"));
        }
    }
    Ok(format!("{} maps", SELF_MAPS.len()))
}

fn criterion_4() -> Result<String, String> {
    for name in SELF_MAPS {
        let subject = example(name).unwrap();
        let (lo, hi) = default_window(formal_dim(&subject));
        let rec = verify_injection_theorem(&subject.setup().unwrap(), lo, hi).map_err(|e| format!("{name}: {e}"))?;
        if !rec.holds() {
            return Err(format!("{name}: {rec:?}"));
        }
        if name.ends_with("deg1") && !rec.degrees.iter().all(|d| d.rank == d.source_betti && d.rank == d.target_betti) {
            return Err(format!("{name}: not an isomorphism: {:?}", rec.degrees));
        }
        if rec.degrees.iter().all(|d| d.source_betti == 0) {
            return Err(format!("{name}: vacuous"));
        }
    }
    Ok(format!("{} maps", SELF_MAPS.len()))
}

/// The small complex against the loop-model Hom complex, Betti numbers and
/// word-length pieces.
fn criterion_5() -> Result<String, String> {
    let mut pairs = 0;
    for total in 1..=4 {
        let subject = example(&format!("cp{total}")).unwrap();
        let model = subject.primary().model.clone().unwrap();
        let (lo, hi) = default_window(2 * total);
        let lm = Arc::new(LoopModel::new(model.source().clone()).unwrap());
        let module = Arc::new(CoefficientModule::from_morphism(model).unwrap());
        let hc = HochschildComplex::new(lm, module, lo, hi).map_err(|e| e.to_string())?;
        let ours: BTreeMap<i32, usize> = hc.report().unwrap().iter().map(|d| (d.degree, d.betti)).collect();
        let hodge = hc.hodge_decompose().unwrap();
        for n in 1..=total {
            let k = total - n;
            let oracle = cp_small_complex_oracle(n, k, lo, hi).map_err(|e| e.to_string())?;
            if oracle.betti != ours {
                return Err(format!("n = {n}, k = {k}: oracle {:?} vs {:?}", oracle.betti, ours));
            }
            for (len, piece) in &oracle.hodge {
                let mine = hodge.get(len).cloned().unwrap_or_default();
                for (d, b) in piece {
                    if mine.get(d).copied().unwrap_or(0) != *b {
                        return Err(format!("n = {n}, k = {k}: word length {len} degree {d}"));
                    }
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (n, k) pairs"))
}

/// Betti numbers of `x^a y^e xb^g yb^f` complexes for the two-sphere,
/// `|x| = 2`, `|y| = 3`, `|xb| = 1`, `|yb| = 2`, `Dy = x^2`, `Dyb = -2 x xb`,
/// built by hand and eliminated densely in a shuffled basis.
fn ls2_dense_betti(lo: i32, hi: i32, rng: &mut ChaCha8Rng) -> BTreeMap<i32, usize> {
    type Mono = (u32, u32, u32, u32);
    let deg = |m: &Mono| 2 * m.0 as i32 + 3 * m.1 as i32 + m.2 as i32 + 2 * m.3 as i32;
    let mut basis: BTreeMap<i32, Vec<Mono>> = BTreeMap::new();
    for a in 0..=(hi as u32 + 2) / 2 {
        for e in 0..=1 {
            for g in 0..=1 {
                for f in 0..=(hi as u32 + 2) / 2 {
                    let m = (a, e, g, f);
                    let d = deg(&m);
                    if d >= lo - 1 && d <= hi + 1 {
                        basis.entry(d).or_default().push(m);
                    }
                }
            }
        }
    }
    for v in basis.values_mut() {
        v.shuffle(rng);
    }
    let image = |m: &Mono| -> Vec<(Mono, Q)> {
        let (a, e, g, f) = *m;
        let mut out = Vec::new();
        if e == 1 {
            out.push(((a + 2, 0, g, f), q(1)));
        }
        if g == 0 && f >= 1 {
            let s = if e == 1 { q(2 * f as i64) } else { q(-2 * f as i64) };
            out.push(((a + 1, e, 1, f - 1), s));
        }
        out
    };
    let empty = Vec::new();
    let rank_of = |k: i32| -> usize {
        let src = basis.get(&k).unwrap_or(&empty);
        let tgt = basis.get(&(k + 1)).unwrap_or(&empty);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let mut rows = vec![vec![Q::zero(); src.len()]; tgt.len()];
        for (j, m) in src.iter().enumerate() {
            for (t, c) in image(m) {
                let i = tgt.iter().position(|u| *u == t).expect("image in basis");
                rows[i][j] += c;
            }
        }
        dense_rank(rows)
    };
    (lo..=hi)
        .map(|k| {
            let dim = basis.get(&k).map_or(0, |v| v.len());
            (k, dim - rank_of(k) - rank_of(k - 1))
        })
        .collect()
}

fn criterion_6() -> Result<String, String> {
    let s3 = example("s3").unwrap().primary().model.clone().unwrap();
    let b = LoopModel::new(s3.source().clone()).unwrap().cohomology(0, 12).unwrap();
    let expected = [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    if b.values().copied().collect::<Vec<_>>() != expected {
        return Err(format!("LS3: {b:?}"));
    }
    for m in [5, 7] {
        let model = example(&format!("s{m}")).unwrap().primary().model.clone().unwrap();
        let b = LoopModel::new(model.source().clone()).unwrap().cohomology(0, 30).unwrap();
        for (d, got) in &b {
            // x^e xbar^j with e in {0, 1}
            let count = (0..=1).filter(|e| (d - e * m) >= 0 && (d - e * m) % (m - 1) == 0).count();
            if *got != count {
                return Err(format!("LS{m} degree {d}: {got} vs {count}"));
            }
        }
    }
    let s2 = example("s2").unwrap().primary().model.clone().unwrap();
    let ours = LoopModel::new(s2.source().clone()).unwrap().cohomology(0, 14).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..3 {
        let dense = ls2_dense_betti(0, 14, &mut rng);
        if dense != ours {
            return Err(format!("LS2: dense {dense:?} vs {ours:?}"));
        }
    }
    Ok(format!("LS2 Betti {:?}", ours.values().collect::<Vec<_>>()))
}

fn check_square_zero(d: impl Fn(i32) -> SparseMatrix, lo: i32, hi: i32) -> bool {
    (lo..hi).all(|k| d(k + 1).mul(&d(k)).unwrap().is_zero())
}

fn basis_elements(a: &DGAlgebra, k: i32) -> Vec<Element> {
    a.basis(k).monomials.iter().map(|m| Element::monomial(m.clone())).collect()
}

fn sign(e: i32) -> Q {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

fn algebra_invariants(a: &DGAlgebra, top: i32, failures: &mut Vec<String>) {
    if !check_square_zero(|k| a.differential_matrix(k), 0, top) {
        failures.push(format!("{}: d^2", a.name()));
    }
    for p in 0..=top {
        for q_ in 0..=top - p {
            for x in basis_elements(a, p) {
                for y in basis_elements(a, q_) {
                    let xy = a.mul(&x, &y);
                    if xy != a.mul(&y, &x).scale(&sign(p * q_)) {
                        failures.push(format!("{}: commutativity", a.name()));
                    }
                    let leibniz = a.mul(&a.d(&x), &y).add(&a.mul(&x, &a.d(&y)).scale(&sign(p)));
                    if a.d(&xy) != leibniz {
                        failures.push(format!("{}: Leibniz", a.name()));
                    }
                }
            }
        }
    }
    let odd: Vec<usize> = (0..a.n_generators()).filter(|&i| a.generators()[i].is_odd()).collect();
    for &i in &odd {
        let u = a.generator(i);
        if !a.mul(&u, &u).is_zero() {
            failures.push(format!("{}: odd square", a.name()));
        }
        for &j in &odd {
            let v = a.generator(j);
            if a.mul(&u, &v) != a.mul(&v, &u).neg() {
                failures.push(format!("{}: Koszul antisymmetry", a.name()));
            }
        }
    }
}

fn hodge_blocks_respected(hc: &HochschildComplex) -> bool {
    let (lo, hi) = hc.window();
    (lo - 1..=hi).all(|k| {
        let d = hc.differential(k).unwrap();
        let len_of = |deg: i32, idx: usize| {
            hc.blocks(deg).iter().find(|b| b.offset <= idx && idx < b.offset + b.len).map(|b| b.word_length)
        };
        d.row_vecs()
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|(j, _)| len_of(k + 1, i) == len_of(k, j)))
    })
}

/// The structural invariant suite over every catalog entry.
fn criterion_7() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for entry in catalog() {
        let subject = entry.build().map_err(|e| format!("{}: {e}", entry.name))?;
        let pds = match &subject {
            Subject::Algebra(a) => vec![a],
            Subject::Morphism { source, target, .. } => vec![source, target],
        };
        for pd in &pds {
            let top = pd.duality.as_ref().unwrap().formal_dim();
            algebra_invariants(&pd.algebra, top, &mut failures);
            let model = pd.model.as_ref().unwrap();
            algebra_invariants(model.source(), top + 2, &mut failures);
            let lm = Arc::new(LoopModel::new(model.source().clone()).unwrap());
            algebra_invariants(lm.total(), 5, &mut failures);
            if !check_square_zero(|k| lm.total().differential_matrix(k), 0, 2 * top + 4) {
                failures.push(format!("{}: D^2 on the loop model", entry.name));
            }
            let module = Arc::new(CoefficientModule::from_morphism(model.clone()).unwrap());
            match HochschildComplex::new(lm, module, -top, top + 2) {
                Ok(hc) => {
                    let (lo, hi) = hc.window();
                    if !check_square_zero(|k| hc.differential(k).unwrap().clone(), lo - 1, hi) {
                        failures.push(format!("{}: D^2 on cochains", entry.name));
                    }
                    if !hodge_blocks_respected(&hc) {
                        failures.push(format!("{}: Hodge blocks", entry.name));
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", entry.name)),
            }
            match DerivationComplex::new(model.clone(), 1, top + 2) {
                Ok(der) => {
                    if !check_square_zero(|n| der.differential(1 - n).unwrap().clone(), -(top + 2), -1) {
                        failures.push(format!("{}: delta^2", entry.name));
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", entry.name)),
            }
            checks += 1;
        }
        let shrieks: Vec<(Shriek, bool)> = match &subject {
            Subject::Algebra(a) => {
                let dd = a.duality.clone().unwrap();
                let id = Arc::new(AlgebraMorphism::identity(a.algebra.clone()));
                vec![(Shriek::new(id, dd.clone(), dd).unwrap(), true)]
            }
            Subject::Morphism { source, target, .. } => {
                let setup = subject.setup().unwrap();
                let equal = source.duality.as_ref().unwrap().formal_dim() == target.duality.as_ref().unwrap().formal_dim();
                vec![(setup.shriek, equal)]
            }
        };
        for (s, equal_dims) in shrieks {
            let c = s.check().unwrap();
            if !c.all() {
                failures.push(format!("{}: shriek {c:?}", entry.name));
            }
            if equal_dims && !degree_scalar(&s).unwrap().is_zero() {
                let split = compute_splitting(&s).unwrap();
                if !split.checks.all() {
                    failures.push(format!("{}: splitting {:?}", entry.name, split.checks));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checks} algebras across {} entries", catalog().len()))
    } else {
        failures.dedup();
        Err(failures.join("; "))
    }
}

/// `Der(AV, AV; id)` for the two-sphere model `AV = A(x_2, y_3)`, `dy = x^2`.
fn criterion_8() -> Result<String, String> {
    let v = Arc::new(
        DGAlgebra::from_strings("s2_model", &[("x", 2), ("y", 3)], &[], &[("y", "x^2")], Some(AlgebraKind::Sullivan))
            .unwrap(),
    );
    let der = DerivationComplex::new(Arc::new(AlgebraMorphism::identity(v)), 1, 4).map_err(|e| e.to_string())?;
    let betti: Vec<usize> = (2..=4).map(|n| der.homology(n).unwrap().betti).collect();
    // Der_1 = <y -> x>, Der_2 = <x -> 1>, Der_3 = <y -> 1>, Der_4 = 0, and the
    // only nonzero entry of delta on Der_1 + Der_2 + Der_3 is
    // delta(x -> 1) = -2 (y -> x)
    let hand = vec![vec![q(0), q(-2), q(0)], vec![q(0), q(0), q(0)], vec![q(0), q(0), q(0)]];
    let entry = |r: usize, c: usize| vec![vec![hand[r][c].clone()]];
    let (rank2, rank3) = (dense_rank(entry(0, 1)), dense_rank(entry(1, 2)));
    let hand_betti = vec![1 - rank2 - rank3, 1 - rank3, 0];
    if dense_rank(hand.clone()) != 1 {
        return Err("hand elimination".into());
    }
    if (1..=4).map(|n| der.dim(n)).collect::<Vec<_>>() != vec![1, 1, 1, 0] {
        return Err(format!("dims {:?}", (1..=4).map(|n| der.dim(n)).collect::<Vec<_>>()));
    }
    for (n, (r, c)) in [(2, (0, 1)), (3, (1, 2))] {
        if *der.differential(n).unwrap() != SparseMatrix::from_dense(&entry(r, c)) {
            return Err(format!("delta on Der_{n}"));
        }
    }
    if betti != hand_betti || betti != vec![0, 1, 0] {
        return Err(format!("{betti:?} vs {hand_betti:?}"));
    }
    let s2 = example("s2").unwrap();
    let along_cohomology = DerivationComplex::new(s2.primary().model.clone().unwrap(), 1, 4).unwrap();
    let rows = mapping_space_report(&along_cohomology).unwrap();
    let ranks: Vec<usize> = rows.iter().filter(|r| r.in_range).map(|r| r.rank).collect();
    if ranks != vec![0, 1, 0] {
        return Err(format!("along H(S^2): {ranks:?}"));
    }
    Ok("(pi_2, pi_3, pi_4) = (0, 1, 0)".into())
}

fn criterion_9() -> Result<String, String> {
    for name in SELF_MAPS {
        let subject = example(name).unwrap();
        let (lo, hi) = default_window(formal_dim(&subject));
        let rec = corollary_shriek_on_homology(&subject.setup().unwrap(), lo, hi).map_err(|e| format!("{name}: {e}"))?;
        if !rec.injective() || rec.degrees.iter().all(|d| d.source_betti == 0) {
            return Err(format!("{name}: {:?}", rec.degrees));
        }
    }
    Ok(format!("{} maps", SELF_MAPS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 9] = [
        ("HH(f_!) HH(f) = x* . on projective inclusions", criterion_1),
        ("f_!(y^i) = x^(k+i) for projective inclusions", criterion_2),
        ("HH(f) injective with exact retraction for self maps", criterion_3),
        ("H(f_*) injective on derivation homology for self maps", criterion_4),
        ("small complex oracle agrees with the Hom complex", criterion_5),
        ("free loop space Betti numbers", criterion_6),
        ("structural invariants over the catalog", criterion_7),
        ("rational homotopy of aut_1 S^2", criterion_8),
        ("dual coefficient composite injective for self maps", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS criterion {}: {title} ({note}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
