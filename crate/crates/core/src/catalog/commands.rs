//! The pipelines behind each command line verb.

use std::path::PathBuf;
use std::sync::Arc;

use super::entries::{catalog, lookup};
use super::report::{digest, RunReport, Table};
use super::spec::{PdAlgebra, SpecFile, Subject};
use crate::cdga::verify_quasi_isomorphism;
use crate::cdga::cohomology as algebra_cohomology;
use crate::derivations::{
    embedding_square_commutes, mapping_space_report, verify_injection_theorem, verify_theorem2, DerivationComplex,
    InjectionRecord,
};
use crate::error::{Error, Result};
use crate::hochschild::{
    corollary_shriek_on_homology, verify_theorem1, CoefficientModule, HochschildComplex, LoopModel,
};
use crate::linalg::scalar::format_scalar;
use crate::poincare::degree_scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Catalog,
    ValidatePd,
    Cohomology,
    LoopModel,
    Hh,
    Shriek,
    Theorem1,
    Theorem2,
    FelixInjection,
    Corollary,
    MapsPi,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::ValidatePd => "validate-pd",
            Command::Cohomology => "cohomology",
            Command::LoopModel => "loop-model",
            Command::Hh => "hh",
            Command::Shriek => "shriek",
            Command::Theorem1 => "theorem1",
            Command::Theorem2 => "theorem2",
            Command::FelixInjection => "felix-injection",
            Command::Corollary => "corollary",
            Command::MapsPi => "maps-pi",
        }
    }
}

/// Coefficients for `hh`: the algebra itself, the target of the morphism,
/// or the linear dual of either.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Coefficients {
    #[default]
    Own,
    Target,
    Dual,
    TargetDual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Example(String),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub command: Command,
    pub input: Option<Input>,
    pub window: Option<(i32, i32)>,
    pub hodge: bool,
    pub coefficients: Coefficients,
}

impl RunOptions {
    pub fn new(command: Command, input: Option<Input>) -> Self {
        RunOptions { command, input, window: None, hodge: false, coefficients: Coefficients::Own }
    }
}

/// Parses `A:B` into a window.
pub fn parse_window(s: &str) -> Result<(i32, i32)> {
    let (a, b) = s.split_once(':').ok_or_else(|| Error::Parse(format!("window `{s}` is not of the form A:B")))?;
    let parse = |t: &str| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad window bound `{t}`")));
    let (lo, hi) = (parse(a)?, parse(b)?);
    if lo > hi {
        return Err(Error::Parse(format!("empty window {lo}:{hi}")));
    }
    Ok((lo, hi))
}

/// Reads an input into its label, presentation and canonical JSON.
pub fn load(input: &Input) -> Result<(String, SpecFile)> {
    match input {
        Input::Example(name) => Ok((name.clone(), lookup(name)?.spec)),
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            Ok((path.display().to_string(), SpecFile::from_json(&text)?))
        }
    }
}

fn default_window(pd: &PdAlgebra) -> Result<(i32, i32)> {
    let m = match &pd.duality {
        Some(dd) => dd.formal_dim(),
        None => pd.algebra.top_degree().ok_or_else(|| Error::Unbounded(pd.name().to_string()))?,
    };
    Ok((-m, 2 * m + 4))
}

pub fn run(opts: &RunOptions) -> Result<RunReport> {
    if opts.command == Command::Catalog {
        return Ok(run_catalog());
    }
    let input = opts.input.as_ref().ok_or_else(|| Error::Parse("one of --example or --file is required".into()))?;
    let (label, spec) = load(input)?;
    let subject = spec.build(&label)?;
    let window = match opts.window {
        Some(w) => w,
        None => default_window(subject.primary())?,
    };
    let uses_window = !matches!(opts.command, Command::ValidatePd | Command::Shriek);
    let mut report =
        RunReport::new(opts.command.name(), &label, digest(&spec.to_json()), uses_window.then_some(window));
    let (lo, hi) = window;
    match opts.command {
        Command::Catalog => unreachable!(),
        Command::ValidatePd => validate_pd(&subject, &mut report)?,
        Command::Cohomology => cohomology(&subject, lo, hi, &mut report)?,
        Command::LoopModel => loop_model(&subject, lo, hi, opts.hodge, &mut report)?,
        Command::Hh => hh(&subject, lo, hi, opts, &mut report)?,
        Command::Shriek => shriek(&subject, &mut report)?,
        Command::Theorem1 => theorem1(&subject, lo, hi, &mut report)?,
        Command::Theorem2 => {
            let rec = verify_theorem2(&subject.setup()?, lo, hi)?;
            injection_tables(&rec, "HH(A; A)", "HH(A; B)", "HH(p) HH(f) = id on cochains", &mut report);
        }
        Command::FelixInjection => {
            let setup = subject.setup()?;
            let rec = verify_injection_theorem(&setup, lo, hi)?;
            injection_tables(&rec, "H(Der; A)", "H(Der; B)", "p_* f_* = id on derivations", &mut report);
            let (dlo, dhi) = rec.window;
            report.check("inclusion into Hochschild cochains commutes with f_*", embedding_square_commutes(&setup, dlo, dhi)?, None);
        }
        Command::Corollary => {
            let rec = corollary_shriek_on_homology(&subject.setup()?, lo, hi)?;
            let mut t = Table::new(
                format!("HH(A; A#) -> HH(A; B#), degree scalar {}", rec.degree_scalar),
                &["degree", "source", "target", "rank"],
            );
            for d in &rec.degrees {
                t.push(vec![d.degree.to_string(), d.source_betti.to_string(), d.target_betti.to_string(), d.rank.to_string()]);
            }
            report.tables.push(t);
            let bad = rec.degrees.iter().find(|d| d.rank != d.source_betti);
            report.check(
                "composite injective in cohomology",
                rec.injective(),
                bad.map(|d| format!("degree {}: rank {} < {}", d.degree, d.rank, d.source_betti)),
            );
        }
        Command::MapsPi => maps_pi(&subject, lo, hi, &mut report)?,
    }
    Ok(report)
}

fn run_catalog() -> RunReport {
    let entries = catalog();
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let mut report = RunReport::new("catalog", "builtin", digest(&names.join("\n")), None);
    let mut t = Table::new("examples", &["name", "kind", "description"]);
    for e in &entries {
        let kind = match e.spec {
            SpecFile::Algebra(_) => "algebra",
            SpecFile::Morphism(_) => "morphism",
        };
        t.push(vec![e.name.clone(), kind.into(), e.description.clone()]);
    }
    report.tables.push(t);
    report
}

fn algebras(subject: &Subject) -> Vec<&PdAlgebra> {
    match subject {
        Subject::Algebra(a) => vec![a],
        Subject::Morphism { source, target, .. } => vec![source, target],
    }
}

fn validate_pd(subject: &Subject, report: &mut RunReport) -> Result<()> {
    for pd in algebras(subject) {
        let dd = pd.duality()?;
        let r = dd.pd().check()?;
        let mut t = Table::new(
            format!("{}: formal dimension {}", pd.name(), r.formal_dim),
            &["degree", "dim", "pairing rank"],
        );
        for (k, rank) in &r.pairing_ranks {
            t.push(vec![k.to_string(), pd.algebra.dim(*k).to_string(), rank.to_string()]);
        }
        report.tables.push(t);
        report.check(format!("{} is a Poincare duality algebra", pd.name()), true, None);
        if let Some(model) = &pd.model {
            let q = verify_quasi_isomorphism(model, 0, r.formal_dim + 1)?;
            report.check(format!("{} model is a quasi-isomorphism", pd.name()), q.is_quasi_isomorphism(), None);
        }
    }
    Ok(())
}

fn cohomology(subject: &Subject, lo: i32, hi: i32, report: &mut RunReport) -> Result<()> {
    for pd in algebras(subject) {
        let h = algebra_cohomology(&pd.algebra, lo, hi)?;
        let q = pd.model.as_ref().map(|m| verify_quasi_isomorphism(m, lo, hi)).transpose()?;
        let mut cols = vec!["degree", "dim", "betti"];
        if q.is_some() {
            cols.extend(["model betti", "rank"]);
        }
        let mut t = Table::new(pd.name().to_string(), &cols);
        for k in lo..=hi {
            let mut row = vec![k.to_string(), pd.algebra.dim(k).to_string(), h[&k].betti.to_string()];
            if let Some(q) = &q {
                let (_, s, _, r) = q.degrees[(k - lo) as usize];
                row.extend([s.to_string(), r.to_string()]);
            }
            t.push(row);
        }
        report.tables.push(t);
        if let Some(q) = q {
            let bad = q.degrees.iter().find(|(_, s, t, r)| !(s == t && t == r));
            report.check(
                format!("{} model is a quasi-isomorphism", pd.name()),
                q.is_quasi_isomorphism(),
                bad.map(|(k, s, t, r)| format!("degree {k}: betti {s} vs {t}, rank {r}")),
            );
        }
    }
    Ok(())
}

fn loop_model(subject: &Subject, lo: i32, hi: i32, hodge: bool, report: &mut RunReport) -> Result<()> {
    let pd = subject.primary();
    let lm = LoopModel::new(pd.model()?.source().clone())?;
    let betti = lm.cohomology(lo, hi)?;
    let pieces = if hodge { Some(lm.hodge(lo, hi)?) } else { None };
    let mut cols = vec!["degree".to_string(), "betti".to_string()];
    if let Some(p) = &pieces {
        cols.extend(p.keys().map(|i| format!("length {i}")));
    }
    let col_refs: Vec<&str> = cols.iter().map(|s| s.as_str()).collect();
    let mut t = Table::new(format!("cohomology of the free loop space model of {}", pd.name()), &col_refs);
    for k in lo..=hi {
        let mut row = vec![k.to_string(), betti[&k].to_string()];
        if let Some(p) = &pieces {
            row.extend(p.values().map(|b| b[&k].to_string()));
        }
        t.push(row);
    }
    report.tables.push(t);
    if let Some(p) = &pieces {
        let ok = (lo..=hi).all(|k| p.values().map(|b| b[&k]).sum::<usize>() == betti[&k]);
        report.check("word length pieces add up to the total", ok, None);
    }
    Ok(())
}

fn hh(subject: &Subject, lo: i32, hi: i32, opts: &RunOptions, report: &mut RunReport) -> Result<()> {
    let pd = subject.primary();
    let model = pd.model()?.clone();
    let (lm, module) = match opts.coefficients {
        Coefficients::Own | Coefficients::Dual => {
            let lm = Arc::new(LoopModel::new(model.source().clone())?);
            let own = CoefficientModule::from_morphism(model)?;
            let module = if opts.coefficients == Coefficients::Dual { own.dual() } else { own };
            (lm, Arc::new(module))
        }
        Coefficients::Target | Coefficients::TargetDual => {
            let setup = subject.setup()?;
            let module = if opts.coefficients == Coefficients::TargetDual {
                Arc::new(setup.module_b.dual())
            } else {
                setup.module_b.clone()
            };
            (setup.loop_model.clone(), module)
        }
    };
    let hc = HochschildComplex::new(lm, module.clone(), lo, hi)?;
    let rows = hc.report()?;
    let mut t = Table::new(format!("Hochschild cohomology with coefficients in {}", module.name()), &["degree", "dim", "betti"]);
    for r in &rows {
        t.push(vec![r.degree.to_string(), hc.dim(r.degree).to_string(), r.betti.to_string()]);
    }
    report.tables.push(t);
    if opts.hodge {
        let lengths: std::collections::BTreeSet<u32> = rows.iter().flat_map(|r| r.hodge.keys().copied()).collect();
        let mut cols = vec!["degree".to_string()];
        cols.extend(lengths.iter().map(|i| format!("length {i}")));
        let col_refs: Vec<&str> = cols.iter().map(|s| s.as_str()).collect();
        let mut t = Table::new("Betti numbers by word length", &col_refs);
        for r in &rows {
            let mut row = vec![r.degree.to_string()];
            row.extend(lengths.iter().map(|i| r.hodge.get(i).copied().unwrap_or(0).to_string()));
            t.push(row);
        }
        report.tables.push(t);
    }
    report.check("D squares to zero and preserves word length", true, None);
    Ok(())
}

fn shriek(subject: &Subject, report: &mut RunReport) -> Result<()> {
    let setup = subject.setup()?;
    let s = &setup.shriek;
    let a = s.morphism().source();
    let b = s.morphism().target();
    let n = setup.dd_b.formal_dim();
    let mut t = Table::new(format!("f_! : {} -> {}, degree {}", b.name(), a.name(), s.shift()), &["degree", "y", "f_!(y)"]);
    for k in 0..=n {
        for m in b.basis(k).monomials.iter() {
            let y = crate::cdga::Element::monomial(m.clone());
            t.push(vec![k.to_string(), b.format(&y), a.format(&s.apply(&y))]);
        }
    }
    report.tables.push(t);
    let c = s.check()?;
    report.check("pi_A f_! = f^# pi_B", c.square_commutes, None);
    report.check("f_! is A-linear", c.a_linear, None);
    report.check("f_! is a chain map", c.chain_map, None);
    report.check("f_! f = f_!(1) .", c.shriek_after_f_is_alpha, None);
    let mut info = Table::new("values", &["quantity", "value"]);
    info.push(vec!["f_!(1)".into(), a.format(&s.alpha())]);
    if setup.dd_a.formal_dim() == n {
        info.push(vec!["degree scalar".into(), format_scalar(&degree_scalar(s)?)]);
    }
    report.tables.push(info);
    Ok(())
}

fn theorem1(subject: &Subject, lo: i32, hi: i32, report: &mut RunReport) -> Result<()> {
    let rec = verify_theorem1(&subject.setup()?, lo, hi)?;
    let mut info = Table::new("classes", &["quantity", "value"]);
    info.push(vec!["x".into(), rec.x.clone()]);
    info.push(vec!["x*".into(), rec.x_star.clone()]);
    info.push(vec!["f_!(1)".into(), rec.alpha.clone()]);
    info.push(vec!["shift".into(), rec.shift.to_string()]);
    report.tables.push(info);
    let mut t = Table::new("HH(f_!) HH(f) against multiplication by x*", &["degree", "cochains", "mismatches"]);
    for d in &rec.degrees {
        t.push(vec![d.degree.to_string(), d.cochains.to_string(), d.mismatches.to_string()]);
    }
    report.tables.push(t);
    report.check("f_!(1) = x*", rec.alpha_equals_x_star, None);
    report.check("epsilon(x x*) = 1", rec.x_dual_pairs_to_one, None);
    report.check("[x*] is nonzero", rec.x_star_class_nonzero, None);
    let first = rec.degrees.iter().find_map(|d| d.first_mismatch.as_ref().map(|m| format!("degree {}: {m}", d.degree)));
    report.check(
        "HH(f_!) HH(f) = x* . on every basis cochain",
        rec.degrees.iter().all(|d| d.mismatches == 0),
        first,
    );
    Ok(())
}

fn injection_tables(rec: &InjectionRecord, src: &str, tgt: &str, retraction: &str, report: &mut RunReport) {
    let mut t = Table::new(format!("induced map, degree scalar {}", rec.degree_scalar), &["degree", src, tgt, "rank"]);
    for d in &rec.degrees {
        t.push(vec![d.degree.to_string(), d.source_betti.to_string(), d.target_betti.to_string(), d.rank.to_string()]);
    }
    report.tables.push(t);
    let mut z = Table::new("complement Z = ker p", &["degree", "dim"]);
    for (k, d) in &rec.complement_dims {
        z.push(vec![k.to_string(), d.to_string()]);
    }
    report.tables.push(z);
    report.check("B = f(A) + Z splitting verified", rec.splitting_verified, None);
    report.check(retraction, rec.retraction_exact, None);
    let bad = rec.degrees.iter().find(|d| d.rank != d.source_betti);
    report.check(
        "injective in cohomology",
        rec.injective(),
        bad.map(|d| format!("degree {}: rank {} < {}", d.degree, d.rank, d.source_betti)),
    );
}

fn maps_pi(subject: &Subject, lo: i32, hi: i32, report: &mut RunReport) -> Result<()> {
    let rho = match subject {
        Subject::Algebra(a) => a.model()?.clone(),
        Subject::Morphism { .. } => subject.setup()?.module_b.carrier().expect("algebra module").clone(),
    };
    let der = DerivationComplex::new(rho, lo, hi)?;
    let mut t = Table::new("rational homotopy of the mapping space component", &["n", "dim Der_n", "rank pi_n"]);
    let dims = der.report()?;
    for (row, d) in mapping_space_report(&der)?.iter().zip(&dims) {
        let rank = if row.in_range { row.rank.to_string() } else { format!("({})", row.rank) };
        t.push(vec![row.degree.to_string(), d.dim.to_string(), rank]);
    }
    report.tables.push(t);
    report.check("delta squares to zero", true, None);
    Ok(())
}
