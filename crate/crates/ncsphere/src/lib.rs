//! An exact symbolic engine for a noncommutative 3-sphere.
//!
//! The algebra is presented by two generators `a`, `b` with relations
//!
//! ```text
//! a a' = a' a,   b b' = b' b,   a b = q b a,   a b' = q^-1 b' a,
//! a a' + b b' = 1,
//! ```
//!
//! where `q` is a formal unimodular parameter and `x'` denotes the adjoint
//! of `x`. On top of the rewriting core the crate builds the circle
//! coaction and its coinvariants, the canonical Galois map with exact
//! verification certificates, a strong connection, the induced family of
//! magnetic-monopole projectors with numerical Chern numbers, and the
//! solid-torus gluing picture of the same sphere.

pub mod bundle;
pub mod connection;
pub mod expr;
pub mod galois;
pub mod heegaard;
pub mod hopf;
pub mod linalg;
pub mod ncalg;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod word;

pub use ncalg::{Element, Monomial};
pub use report::{Report, Status};
pub use scalar::{GaussRat, Scalar};
