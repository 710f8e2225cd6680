//! Complexes of derivations along a morphism, the retraction of a
//! nonzero-degree map and the injectivity statements it implies.

pub mod complex;
pub mod splitting;
pub mod theorems;

pub use complex::{mapping_space_report, DerBlock, DerivationComplex, DerivationDegree, MappingSpaceRow};
pub use splitting::{compute_splitting, Splitting, SplittingChecks};
pub use theorems::{
    embed_derivations, embedding_square_commutes, postcompose, pushforward, verify_injection_theorem,
    verify_theorem2, DerivationEmbedding, DerivationMap, InjectionDegree, InjectionRecord,
};
