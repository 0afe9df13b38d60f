//! Exact odd Khovanov homology of marked link diagrams, with the chain-level
//! gl(1|1) action, integral homology via Smith normal form, and the
//! reduced cube for the pretzel links `P(n,n,-n)`.

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod evencheck;
pub mod gf2;
pub mod homology;
pub mod int;
pub mod pipeline;
pub mod pretzel;
pub mod signs;
pub mod snf;
pub mod sparse;
pub mod statespace;

pub use error::{Error, Result};
