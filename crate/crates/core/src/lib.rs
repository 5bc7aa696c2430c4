//! Exact computations around Dynkin diagram folding: root data, twining
//! characters, invariant polynomials, opers and quadratic Gaudin-type
//! Hamiltonians.

pub mod acceptance;
pub mod error;
pub mod folding;
pub mod gaudin;
pub mod invariants;
pub mod linalg;
pub mod modp;
pub mod opers;
pub mod poly;
pub mod rational;
pub mod realization;
pub mod reps;
pub mod rootdata;
pub mod sparse;
pub mod tensor_maps;
pub mod uea;
pub mod upoly;

pub use error::{Error, Result};
