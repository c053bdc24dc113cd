//! Fermionic convolution, Gaussification, non-Gaussianity measures and
//! Gaussianity tests on dense Jordan-Wigner operators.
//!
//! Modes are labelled `0..n`; qubit 0 is the leftmost tensor factor (most
//! significant bit of a basis index). Majorana operators are 1-based:
//! `gamma_{2j-1} = Z..Z X I..I`, `gamma_{2j} = Z..Z Y I..I`.

pub mod circuits;
pub mod clifford;
pub mod convolution;
pub mod error;
pub mod exec;
pub mod gaussian;
pub mod grassmann;
pub mod linalg;
pub mod measures;
pub mod operator;
pub mod pfaffian;
pub mod states;
pub mod testing;
pub mod tol;

pub use error::{FerroError, Result};
pub use exec::Execution;
pub use grassmann::GrassmannPoly;
pub use operator::{DenseOperator, MultiIndex, C64};
