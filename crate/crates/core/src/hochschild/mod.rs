//! Free loop space models and Hochschild cochain complexes with coefficients
//! in bounded modules, induced maps and their verification.

pub mod complex;
pub mod cup;
pub mod loop_model;
pub mod maps;
pub mod module;
pub mod oracle;
pub mod theorem1;

pub use complex::{Block, HochschildComplex, HochschildDegree};
pub use cup::{cup_product, diagonal};
pub use loop_model::LoopModel;
pub use maps::{InducedMap, ModuleMap};
pub use module::CoefficientModule;
pub use oracle::{cp_small_complex_oracle, SmallComplexReport};
pub use theorem1::{
    corollary_shriek_on_homology, describe_cochain, verify_theorem1, CorollaryDegree, CorollaryRecord,
    MorphismSetup, Theorem1Degree, Theorem1Record,
};
