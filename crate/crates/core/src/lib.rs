//! Exact construction and verification of first-order differential calculi
//! and their dual Cartan pairs over finite-dimensional unital algebras.

pub mod algebra;
pub mod bimodule;
pub mod braiding;
pub mod calculus;
pub mod cartan;
pub mod duality;
pub mod endo;
pub mod error;
pub mod field;
pub mod linalg;
pub mod report;

pub use algebra::{Algebra, Builtin};
pub use bimodule::{Bimodule, BimoduleMap, MapKind};
pub use braiding::{BraidingDirection, FreeModuleBraiding};
pub use cartan::CartanPair;
pub use calculus::{Fodc, UniversalCalculus};
pub use duality::{DualModule, Side};
pub use error::Error;
pub use field::{Field, Scalar};
pub use linalg::{LinearMap, Matrix, Subspace};
pub use report::{Check, Report, Violation};
