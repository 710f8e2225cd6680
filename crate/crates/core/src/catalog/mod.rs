//! Built-in examples, JSON input files, reports and the command pipelines.

pub mod commands;
pub mod entries;
pub mod report;
pub mod spec;

pub use commands::{load, parse_window, run, Coefficients, Command, Input, RunOptions};
pub use entries::{catalog, example, lookup, CatalogEntry};
pub use report::{digest, IdentityRecord, RunReport, Table, SCHEMA_VERSION};
pub use spec::{AlgebraSpec, MorphismSpec, PairSpec, PdAlgebra, SpecFile, Subject};
