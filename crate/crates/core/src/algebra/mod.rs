//! Exact arithmetic: rationals, Laurent polynomials, truncated series,
//! cyclotomic fields and symmetric integer matrices.

mod cyclotomic;
mod laurent;
mod laurent2;
mod matrix;
mod series;

pub use cyclotomic::{
    cyclotomic_invert, cyclotomic_polynomial, cyclotomic_root, CyclotomicElement,
};
pub use laurent::LaurentPoly;
pub use laurent2::LaurentPoly2;
pub use matrix::{bareiss_determinant, matrix_signature, Signature, SymIntMatrix};
pub use series::{
    kauffman_substitution, series_compose_exp, GaussSeries, SeriesSubstitution, Substitutable,
    TruncatedSeries,
};

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("imaginary part survives at order {order}")]
    NonRealResult { order: usize },
    #[error("negative power of a non-invertible series in variable {0}")]
    NotInvertible(&'static str),
    #[error("cyclotomic levels differ: {0} vs {1}")]
    LevelMismatch(u32, u32),
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
