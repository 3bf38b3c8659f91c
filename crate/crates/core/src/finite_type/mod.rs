//! Finite type invariants and the quantities derived from them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{
    kauffman_substitution, series_compose_exp, AlgebraError, LaurentPoly, LaurentPoly2, Rational,
};
use crate::knot_model::KnotDiagram;
use crate::skein_engine::{kauffman_polynomial, SkeinCache, SkeinError, SkeinLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteTypeError {
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("k_5,N is defined for N in 2..=5, got {0}")]
    InvalidN(i64),
}

/// A non-negative rational or `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    /// `self <= bound`; never true for `+inf`.
    pub fn at_most(&self, bound: &Rational) -> bool {
        matches!(self, Extended::Finite(r) if r <= bound)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

/// How d(K) is read off the Alexander polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreeMode {
    /// Top exponent `k` of the symmetric polynomial.
    #[default]
    TopExponent,
    /// Breadth `2k`.
    Breadth,
}

/// Per-knot invariants consumed by the classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantRecord {
    pub name: String,
    pub a2: i64,
    pub a4: i64,
    pub v3: Rational,
    pub v5: Rational,
    pub det: i64,
    pub d_alex: i64,
    pub genus: Option<i64>,
    pub sigma: Option<i64>,
    pub tau: Option<i64>,
    pub nu: Option<i64>,
    pub nu_mirror: Option<i64>,
    pub alternating: bool,
    pub quasi_alternating: Option<bool>,
    pub amphicheiral: bool,
    pub torus_2p: bool,
    pub torus_other: bool,
    pub c_k: Option<i64>,
    pub o_k: Extended,
}

fn small(c: &BigInt) -> i64 {
    i64::try_from(c).expect("coefficient fits in i64")
}

/// Coefficients of `z^2` and `z^4`.
pub fn conway_coeffs(conway: &LaurentPoly) -> (i64, i64) {
    (small(&conway.coeff(4)), small(&conway.coeff(8)))
}

/// `v3 = -V'''(1)/144 - V''(1)/48`.
pub fn v3_from_jones(v: &LaurentPoly) -> Rational {
    let d2 = v.derivative_at_one(2);
    let d3 = v.derivative_at_one(3);
    -d3 / Rational::from_integer(144.into()) - d2 / Rational::from_integer(48.into())
}

/// Coefficient of `h^5` in `F(i e^{Nh}, -i(e^h - e^{-h}))`.
pub fn k5n_from_kauffman(f: &LaurentPoly2, n: i64) -> Result<Rational, FiniteTypeError> {
    if !(2..=5).contains(&n) {
        return Err(FiniteTypeError::InvalidN(n));
    }
    let s = series_compose_exp(f, &kauffman_substitution(n, 5), 5)?;
    Ok(s.coeff(5).clone())
}

pub fn k5n(
    d: &KnotDiagram,
    n: i64,
    cache: &mut SkeinCache,
    limits: &SkeinLimits,
) -> Result<Rational, FiniteTypeError> {
    k5n_from_kauffman(&kauffman_polynomial(d, cache, limits)?, n)
}

/// `v5 = k52/768 + k53/768 - k54/1536 + 7 k55/61440`.
pub fn v5_from_kauffman(f: &LaurentPoly2) -> Result<Rational, FiniteTypeError> {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    Ok(
        k5n_from_kauffman(f, 2)? * r(1, 768) + k5n_from_kauffman(f, 3)? * r(1, 768)
            - k5n_from_kauffman(f, 4)? * r(1, 1536)
            + k5n_from_kauffman(f, 5)? * r(7, 61440),
    )
}

pub fn v5(
    d: &KnotDiagram,
    cache: &mut SkeinCache,
    limits: &SkeinLimits,
) -> Result<Rational, FiniteTypeError> {
    v5_from_kauffman(&kauffman_polynomial(d, cache, limits)?)
}

/// Whether `v5` lies in `(1/48) Z`, the granularity seen in tabulated values.
pub fn v5_has_expected_granularity(v5: &Rational) -> bool {
    (v5 * Rational::from_integer(48.into())).is_integer()
}

/// `O(K) = |7 a2^2 - a2 - 10 a4| / |4 v3|`, infinite when `v3 = 0`.
pub fn obstruction_o(a2: i64, a4: i64, v3: &Rational) -> Extended {
    if v3.is_zero() {
        return Extended::Infinite;
    }
    let num = Rational::from_integer(BigInt::from(7 * a2 * a2 - a2 - 10 * a4).abs());
    Extended::Finite(num / (v3.abs() * Rational::from_integer(4.into())))
}

/// `obstruction_o` applied to a record.
pub fn obstruction_record(rec: &InvariantRecord) -> Extended {
    obstruction_o(rec.a2, rec.a4, &rec.v3)
}

/// d(K) of a symmetric Alexander polynomial; 0 for `Δ = 1`.
pub fn alexander_degree(delta: &LaurentPoly, mode: DegreeMode) -> i64 {
    let top = delta.max_exp2().unwrap_or(0).max(0) / 2;
    match mode {
        DegreeMode::TopExponent => top,
        DegreeMode::Breadth => 2 * top,
    }
}
