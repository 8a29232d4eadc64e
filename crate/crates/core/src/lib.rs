//! List decoding of Folded Reed-Solomon (FRS) and univariate multiplicity
//! codes down to a low-dimensional candidate space, randomized pruning of
//! that space to the actual list, and evaluators for the associated
//! list-size bounds.

pub mod algebra;
pub mod analysis;
pub mod bounds;
pub mod codes;
pub mod decoder;
mod error;
pub mod experiments;
pub mod oracle;
pub mod prune;
pub mod rng;
pub mod schema;

pub use error::{Error, Result};
