pub mod error;
pub mod generator;
pub mod grid;
pub mod linalg;
pub mod poly;
pub mod syzygy;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{ExponentTriple, HomogeneousPolynomial, Scalar, Var};
