//! Exact-arithmetic kernel for the Cartan type Lie superalgebras W(n), S(n),
//! S̃(n) and H(n): construction, superderivations, and certification that
//! every local superderivation is a superderivation at a fixed n.

pub mod derivations;
pub mod error;
pub mod exterior;
pub mod families;
pub mod liesuper;
pub mod linalg;
pub mod localcert;

pub use error::{Error, Result};
pub use exterior::{ExtElem, Monomial};
pub use families::{build, build_family, build_lprime, FamilySpec, LPrimeModel};
pub use liesuper::{AlgebraModel, BasisDesc, Family, FamilyTag, SuperVec, WeightVec};
pub use linalg::{Matrix, Rational, SparseVec, Subspace};
