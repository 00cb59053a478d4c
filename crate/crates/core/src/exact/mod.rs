//! Exact rational arithmetic and univariate polynomials over Q.
//!
//! Everything downstream (cyclotomic fields, Lefschetz systems, Weierstrass
//! discriminants) is built on [`Rat`] and [`QPoly`]. There is no floating
//! point anywhere in the crate.

mod algo;
mod parse;
mod poly;

pub use algo::{coprime_refinement, poly_gcd, resultant, squarefree_decomposition};
pub use parse::parse_poly;
pub use poly::{Degree, QPoly};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomials in different variables: `{0}` and `{1}`")]
    VariableMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
