//! Exact and numerical tools for the one-parameter family of deformation
//! algebras A(R) whose commutative limits are the surfaces
//! `z² + (x² + y² − R)² = 1`.
//!
//! * [`epsring`]: exact scalars `p(ε)/(1+ε²)^m`.
//! * [`ncalgebra`]: normal-form arithmetic, adjoint, commutative projection
//!   and Poisson bracket.
//! * [`representations`]: explicit matrices for every representation family.
//! * [`classifier`]: which parameters admit which representations.
//! * [`geometry`]: the variety M(R), Darboux charts and a finite-difference
//!   Poisson oracle.
//! * [`shell`]: expression parser, file emitters and the CLI.

pub mod classifier;
pub mod epsring;
pub mod geometry;
pub mod ncalgebra;
pub mod representations;
pub mod shell;

pub use epsring::{ComplexRational, EpsScalar};
pub use ncalgebra::{AlgebraContext, CommutativePoly, NormalForm};
