//! Exact rational scalars and the sparse linear algebra used throughout.

mod matrix;
mod rational;
mod sparse;
mod subspace;

pub use matrix::Matrix;
pub use rational::Rational;
pub use sparse::SparseVec;
pub use subspace::{Echelon, Subspace};
