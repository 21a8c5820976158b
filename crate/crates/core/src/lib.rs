//! Core engine for dimension-truncated simplicial sets, finite categories,
//! quasi-category checks, the fibrant-replacement tower, the marked-object
//! cone constructions, hammock localization at desk scale, and a finite
//! model of split/pure morphisms of presheaves.

pub mod constructions;
pub mod error;
pub mod fincat;
pub mod presheaf;
pub mod quasicat;
pub mod simpset;

pub use error::{Error, Result};
