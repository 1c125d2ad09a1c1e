//! Exact computer algebra for the left-symmetric algebra of polynomial
//! derivations, Jacobian nilpotency, noncommutative symmetric functions and
//! the formal inverse of `X + tF`.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod error;
pub mod fixtures;
pub mod inverse;
pub mod liealg;
pub mod linear;
pub mod lsalg;
pub mod nsymm;
pub mod parse;
pub mod polymatrix;
pub mod polyring;
pub mod random;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use lsalg::Derivation;
pub use parse::parse_polynomial;
pub use polymatrix::{Nilpotency, PolyMatrix};
pub use polyring::{Monomial, PolyMap, Polynomial, Rational, TSeries};
