//! Exact computations with stringy Chow rings, stringy K-theory and
//! G-Frobenius algebras of finite group actions.
//!
//! Every number is an exact rational or an element of a cyclotomic field.

pub mod catalog;
pub mod character;
pub mod classes;
pub mod cyclotomic;
pub mod error;
pub mod euler;
pub mod frobenius;
pub mod geometry;
pub mod group;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod torsion;

pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup, TwoCocycle};

/// Exact rational numbers.
pub type Q = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Shorthand for the rational `n / d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
