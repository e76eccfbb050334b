//! Function families, embeddings and exact class-membership predicates.

mod embed;
mod families;
mod hamming;
mod predicates;
mod rademacher;
mod simplex;
mod xos;

pub use embed::{boolean_to_submodular, middle_layer_half, subset_rank, subset_unrank};
pub use families::{hockey_stick, majority, separation_example};
pub use hamming::{hamming_self_bounding, HammingCode};
pub use predicates::{
    is_monotone, is_self_bounding, is_subadditive, is_submodular, is_submodular_by_definition,
    is_xos, PredicateOutcome, Witness, XosOutcome, PREDICATE_TOLERANCE, SUBADDITIVE_MAX_DIM,
    XOS_MAX_DIM,
};
pub use rademacher::{rademacher_function, vectors_from_xos, VectorSet, RADEMACHER_MAX_DIM};
pub use xos::{mdnf_to_xos, random_talagrand_mdnf, Mdnf, XosRep};
