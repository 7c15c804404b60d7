//! Bi-Lipschitz identity cards of plane curve germs and certified
//! non-equivalence verdicts.

pub mod equivalence;
pub mod error;
pub mod germ;
pub mod invariants;
pub mod numerics;
pub mod puiseux;
pub mod report;
pub mod singularity;
pub mod sweep;

pub use error::{Error, Result};
