use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::forward_owned;
use super::LaurentPoly;

/// Laurent polynomial in two variables `a`, `z` with integer coefficients.
///
/// Knot polynomials only carry non-negative powers of `z`; intermediate link
/// values inside skein recursion may carry negative ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a: i32, z: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, z, c.into());
        p
    }

    /// Builds a polynomial from `(coefficient, a exponent, z exponent)` triples.
    pub fn from_terms(terms: &[(i64, i32, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, a, z) in terms {
            p.add_term(a, z, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, a: i32, z: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, z)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, z));
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

    /// Iterates over `((a exponent, z exponent), coefficient)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, a: i32, z: i32) -> BigInt {
        self.terms.get(&(a, z)).cloned().unwrap_or_default()
    }

    pub fn min_z(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Multiplies by `a^da z^dz`.
    pub fn shift(&self, da: i32, dz: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, z), c)| ((a + da, z + dz), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `a -> a^{-1}`.
    pub fn invert_a(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, z), c)| ((-a, *z), c.clone()))
                .collect(),
        }
    }

    /// Substitutes one-variable Laurent polynomials for `a`, `a^{-1}` and `z`.
    /// Returns `None` when a negative power of `z` is present.
    pub fn substitute(
        &self,
        a: &LaurentPoly,
        a_inv: &LaurentPoly,
        z: &LaurentPoly,
    ) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for ((ea, ez), c) in &self.terms {
            if *ez < 0 {
                return None;
            }
            let pa = if *ea >= 0 {
                a.pow(*ea as u32)
            } else {
                a_inv.pow((-ea) as u32)
            };
            let term = &(&pa * &z.pow(*ez as u32)) * &LaurentPoly::constant(c.clone());
            out += &term;
        }
        Some(out)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut by_z: BTreeMap<i32, Vec<(i32, &BigInt)>> = BTreeMap::new();
        for ((a, z), c) in &self.terms {
            by_z.entry(*z).or_default().push((*a, c));
        }
        let mut first = true;
        for (z, row) in by_z {
            for (a, c) in row {
                let neg = c.is_negative();
                let abs = c.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                first = false;
                let mut factors = Vec::new();
                if !abs.is_one() || (a == 0 && z == 0) {
                    factors.push(abs.to_string());
                }
                match a {
                    0 => {}
                    1 => factors.push("a".into()),
                    _ => factors.push(format!("a^{a}")),
                }
                match z {
                    0 => {}
                    1 => factors.push("z".into()),
                    _ => factors.push(format!("z^{z}")),
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for ((a, z), c) in &rhs.terms {
            self.add_term(*a, *z, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly2> for LaurentPoly2 {
    fn sub_assign(&mut self, rhs: &LaurentPoly2) {
        for ((a, z), c) in &rhs.terms {
            self.add_term(*a, *z, -c);
        }
    }
}

impl Add<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a1, z1), c1) in &self.terms {
            for ((a2, z2), c2) in &rhs.terms {
                out.add_term(a1 + a2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

forward_owned!(LaurentPoly2, Add::add, Sub::sub, Mul::mul);
