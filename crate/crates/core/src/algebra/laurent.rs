use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Laurent polynomial in `t^{1/2}` with integer coefficients.
///
/// Exponents are stored doubled, so the key `k` stands for `t^{k/2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^{exp2/2}`.
    pub fn monomial(c: impl Into<BigInt>, exp2: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp2, c.into());
        p
    }

    /// Builds a polynomial from `(integer exponent, coefficient)` pairs.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(2 * e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp2: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp2).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp2);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp2: i64) -> BigInt {
        self.terms.get(&exp2).cloned().unwrap_or_default()
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp2(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `t -> t^m`.
    pub fn substitute_power(&self, m: i64) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(e * m, c.clone());
        }
        p
    }

    /// Multiplies by `t^{exp2/2}`.
    pub fn shift(&self, exp2: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + exp2, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point; `None` for half-integer exponents or `t = 0`
    /// with negative exponents.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        if !self.has_integer_exponents() {
            return None;
        }
        if t.is_zero() && self.min_exp2().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let k = e / 2;
            let v = if k >= 0 {
                num_traits::pow(t.clone(), k as usize)
            } else {
                num_traits::pow(t.recip(), (-k) as usize)
            };
            acc += v * Rational::from_integer(c.clone());
        }
        Some(acc)
    }

    /// The `k`-th derivative evaluated at `t = 1`.
    pub fn derivative_at_one(&self, k: u32) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let exp = Rational::new(BigInt::from(*e), BigInt::from(2));
            let mut f = Rational::one();
            for j in 0..k {
                f *= &exp - Rational::from_integer(BigInt::from(j));
            }
            acc += f * Rational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let exp = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("({}/2)", e)
            };
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (2, true) => write!(f, "t")?,
                (2, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{exp}")?,
                (_, false) => write!(f, "{abs}*t^{exp}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
    )*
    impl Neg for $t {
        type Output = $t;
        fn neg(self) -> $t { -(&self) }
    }
    };
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add::add, Sub::sub, Mul::mul);
