//! Multidegrees of multigraded ideals.
//!
//! The crate computes K-polynomials, the multidegree and its relatives
//! (`𝒞`, `𝒢`, `𝒜`), generic initial ideals in multigraded polynomial rings,
//! the standardization of an arbitrary positive grading, polymatroid checks on
//! supports, and the closed formulas for ideals of maximal minors.
//!
//! Everything is exact: coefficients live in `ℚ` or a prime field, multidegree
//! polynomials have integer coefficients.

pub mod determinantal;
pub mod error;
pub mod field;
pub mod gin;
pub mod groebner;
pub mod hilbert;
pub mod intpoly;
pub mod monomial;
pub mod order;
pub mod par;
pub mod polymatroid;
pub mod ring;
pub mod standardization;
pub mod text;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use groebner::Ideal;
pub use intpoly::IntegerPolynomial;
pub use monomial::MonomialIdeal;
pub use order::{MonomialOrder, TieBreak};
pub use par::Execution;
pub use ring::{GradedRing, Monomial, Polynomial};
