use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ratloop::catalog::{parse_window, run, Coefficients, Command, Input, RunOptions};

#[derive(Parser)]
#[command(name = "ratloop", version, about = "Exact Hochschild cohomology, shriek maps and derivation complexes over Q")]
struct Cli {
    #[command(subcommand)]
    command: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List the built-in examples
    Catalog(Common),
    /// Check Poincare duality of the algebras involved
    ValidatePd(Common),
    /// Cohomology of the algebras and of their Sullivan models
    Cohomology(Common),
    /// Cohomology of the free loop space model
    LoopModel(Common),
    /// Hochschild cohomology through the loop model
    Hh(Common),
    /// The shriek map of a morphism and its defining identities
    Shriek(Common),
    /// HH(f_!) HH(f) against multiplication by the Poincare dual class
    Theorem1(Common),
    /// Injectivity of HH(A; A) -> HH(A; B) for a map of nonzero degree
    Theorem2(Common),
    /// Injectivity of f_* on derivation homology
    FelixInjection(Common),
    /// Injectivity of HH(A; A#) -> HH(A; B#)
    Corollary(Common),
    /// Rational homotopy groups of a mapping space component
    MapsPi(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in example name (see `catalog`)
    #[arg(long, conflicts_with = "file")]
    example: Option<String>,
    /// JSON presentation of an algebra or a morphism
    #[arg(long)]
    file: Option<PathBuf>,
    /// Degree window A:B
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Also write the report as JSON to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Split Betti numbers by word length
    #[arg(long)]
    hodge: bool,
    /// Print timing to standard error
    #[arg(long)]
    verbose: bool,
    /// Coefficient module for `hh`
    #[arg(long, value_enum, default_value_t = CoefficientArg::Own)]
    coefficients: CoefficientArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefficientArg {
    #[value(name = "self")]
    Own,
    Target,
    Dual,
    TargetDual,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Verb::Catalog(c) => (Command::Catalog, c),
        Verb::ValidatePd(c) => (Command::ValidatePd, c),
        Verb::Cohomology(c) => (Command::Cohomology, c),
        Verb::LoopModel(c) => (Command::LoopModel, c),
        Verb::Hh(c) => (Command::Hh, c),
        Verb::Shriek(c) => (Command::Shriek, c),
        Verb::Theorem1(c) => (Command::Theorem1, c),
        Verb::Theorem2(c) => (Command::Theorem2, c),
        Verb::FelixInjection(c) => (Command::FelixInjection, c),
        Verb::Corollary(c) => (Command::Corollary, c),
        Verb::MapsPi(c) => (Command::MapsPi, c),
    };
    let window = match common.window.as_deref().map(parse_window).transpose() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let input = match (common.example, common.file) {
        (Some(name), _) => Some(Input::Example(name)),
        (None, Some(path)) => Some(Input::File(path)),
        (None, None) => None,
    };
    let opts = RunOptions {
        command,
        input,
        window,
        hodge: common.hodge,
        coefficients: match common.coefficients {
            CoefficientArg::Own => Coefficients::Own,
            CoefficientArg::Target => Coefficients::Target,
            CoefficientArg::Dual => Coefficients::Dual,
            CoefficientArg::TargetDual => Coefficients::TargetDual,
        },
    };
    let start = Instant::now();
    let report = match run(&opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", report.render());
    if let Some(path) = common.json {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if common.verbose {
        eprintln!("{} finished in {:.2?}", command.name(), start.elapsed());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
