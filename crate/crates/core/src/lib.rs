//! Exact construction of twisting elements and twisted R-matrices for
//! Belavin-Drinfeld triples of `sl(n)`, evaluated in the fundamental
//! representation over the field Q(v), `v = q^{1/D}`.

pub mod error;
pub mod json;
pub mod linalg;
pub mod rep;
pub mod roots;
pub mod scalar;
pub mod triples;
pub mod verify;

pub use error::{Error, Result};
