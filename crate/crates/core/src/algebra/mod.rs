//! Finite fields, GF(q) linear algebra and exact rationals.

pub mod field;
pub mod matrix;
pub mod rational;

pub use field::GaloisField;
pub use matrix::{GfMatrix, Subspace};
pub use rational::Rational;
