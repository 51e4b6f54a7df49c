//! Exact computation of the higher degrees of polar maps of weighted
//! products of homogeneous polynomials, and of the Gauss maps of the
//! logarithmic foliations attached to them.
//!
//! Polynomials live over [`field::Rationals`] or a word-sized
//! [`field::PrimeField`]. Degrees of rational maps are counted as sizes of
//! generic fibers with randomized Gröbner-basis computations over a large
//! prime; every random choice comes from an explicit seed.

pub mod error;
pub mod field;
pub mod foliation;
pub mod gcd;
pub mod groebner;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod polar;
pub mod random;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use gcd::gcd;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{euler_contraction, HomogeneousForm, MultiPoly};
