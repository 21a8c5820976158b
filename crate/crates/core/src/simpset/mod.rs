//! Truncated, finitely presented simplicial sets: normal forms, standard
//! shapes, operator evaluation, colimits, products, cones, and the
//! level-wise injectivity criterion.

pub mod colimit;
pub mod inject;
pub mod join;
pub mod map;
pub mod product;
pub mod sset;
pub mod standard;
pub mod word;

pub use colimit::{discrete_product, inclusion_by_name, map_from_copies, pushout, pushout_induced, Pushout};
pub use inject::{injectivity_criterion, CriterionVerdict, HornSquare};
pub use join::{cone_inclusion, join_point, APEX};
pub use map::{find_sset_isomorphism, InjectivityVerdict, SimplicialMap};
pub use product::{product, projections};
pub use sset::{Operator, SimplexId, SimplexRef, SimplicialSet, SsetBuilder};
pub use standard::{make_standard, subset_name, StandardKind};
pub use word::{normalize_word, normalize_word_by_surjection, normalize_word_rightmost, words_of_length, DegeneracyWord};
