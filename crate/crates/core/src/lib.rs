//! Workbench for the BCH codes `C_(q, q+1, 3, h)` over GF(q), their
//! four-dimensional duals, the designs they hold and their subfield subcodes.

pub mod arith;
pub mod codes;
pub mod cyclotomic;
pub mod designs;
pub mod diophantine;
pub mod enumerate;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod poly;
pub mod subfield;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
