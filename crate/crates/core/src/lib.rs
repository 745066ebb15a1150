//! Exact computations with Novikov algebras, Novikov bialgebras and the
//! Lie bialgebras obtained from them by affinization.
//!
//! Everything is exact: scalars live in ℚ or a prime field, and the infinite
//! sums of the completed tensor products are represented by finitely many
//! polynomial bands.

pub mod affine;
pub mod algebra;
pub mod bialgebra;
pub mod cli;
pub mod doubling;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod representation;
pub mod sampling;
pub mod scalar;
pub mod search;
pub mod yangbaxter;

pub use algebra::{Algebra, Class, PreNovikovAlgebra};
pub use bialgebra::{Coalgebra, NovikovBialgebra};
pub use error::{Error, Result};
pub use linalg::{Basis, BilinearForm, Matrix, Ten3};
pub use report::{Check, Report};
pub use representation::Representation;
pub use scalar::{Field, Scalar};
pub use yangbaxter::RTensor;
