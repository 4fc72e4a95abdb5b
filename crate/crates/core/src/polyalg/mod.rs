//! Exact sparse multivariate polynomials over the rationals.

mod field;
pub mod linalg;
mod monomial;
mod parse;
mod polynomial;
mod restricted;

#[cfg(test)]
mod proptests;

pub use field::{poly_determinant, OneForm, VectorField};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub(crate) use polynomial::rational_to_f64;
pub use restricted::{
    lagrange_zero_system, restricted_index_lagrange, restricted_index_minors, restriction_minor, restriction_minors,
};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Empty(&'static str),
    #[error("{0}")]
    Invalid(String),
}
