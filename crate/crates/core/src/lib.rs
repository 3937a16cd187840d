//! Exact chain complexes for Hochschild, Harrison, gamma and symmetric
//! homology of weight-graded augmented commutative algebras.

pub mod algebra;
pub mod delta_s;
pub mod error;
pub mod gamma;
pub mod hochschild;
pub mod linalg;
pub mod symmetric;

pub use error::{Error, Result};
