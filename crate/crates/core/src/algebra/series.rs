use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPoly, LaurentPoly2, Rational};

/// Power series in `h` truncated after `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncates or zero-pads `coeffs` to length `order + 1`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    /// `exp(c h)`.
    pub fn exp_linear(order: usize, c: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            if k > 0 {
                term = term * c / Rational::from_integer(BigInt::from(k));
            }
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }
}

/// Series with Gaussian-rational coefficients, kept as a real and an imaginary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSeries {
    pub re: TruncatedSeries,
    pub im: TruncatedSeries,
}

impl GaussSeries {
    pub fn real(re: TruncatedSeries) -> Self {
        let order = re.order();
        Self {
            re,
            im: TruncatedSeries::zero(order),
        }
    }

    pub fn imaginary(im: TruncatedSeries) -> Self {
        let order = im.order();
        Self {
            re: TruncatedSeries::zero(order),
            im,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::real(TruncatedSeries::constant(order, Rational::one()))
    }

    pub fn order(&self) -> usize {
        self.re.order()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    /// Returns the real part, failing if the imaginary part is non-zero.
    pub fn into_real(self) -> Result<TruncatedSeries, AlgebraError> {
        if let Some(k) = self.im.coeffs().iter().position(|c| !c.is_zero()) {
            return Err(AlgebraError::NonRealResult { order: k });
        }
        Ok(self.re)
    }
}

/// Series assigned to each polynomial variable, with optional inverses.
///
/// For [`LaurentPoly`] the single variable is `t^{1/2}`; for [`LaurentPoly2`]
/// variable 0 is `a` and variable 1 is `z`.
#[derive(Clone, Debug)]
pub struct SeriesSubstitution {
    pub vars: Vec<(GaussSeries, Option<GaussSeries>)>,
}

impl SeriesSubstitution {
    fn power(
        &self,
        var: usize,
        exp: i64,
        cache: &mut Vec<Vec<(i64, GaussSeries)>>,
    ) -> Result<GaussSeries, AlgebraError> {
        if let Some((_, s)) = cache[var].iter().find(|(e, _)| *e == exp) {
            return Ok(s.clone());
        }
        let (fwd, inv) = &self.vars[var];
        let base = if exp >= 0 {
            fwd.clone()
        } else {
            inv.clone().ok_or(AlgebraError::NotInvertible(if var == 0 {
                "a"
            } else {
                "z"
            }))?
        };
        let mut acc = GaussSeries::one(fwd.order());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        cache[var].push((exp, acc.clone()));
        Ok(acc)
    }
}

/// Polynomials that can be composed with power series.
pub trait Substitutable {
    fn compose_gauss(
        &self,
        spec: &SeriesSubstitution,
        order: usize,
    ) -> Result<GaussSeries, AlgebraError>;
}

impl Substitutable for LaurentPoly {
    fn compose_gauss(
        &self,
        spec: &SeriesSubstitution,
        order: usize,
    ) -> Result<GaussSeries, AlgebraError> {
        let mut cache = vec![Vec::new(); spec.vars.len()];
        let mut acc = GaussSeries::real(TruncatedSeries::zero(order));
        for (e, c) in self.terms() {
            let p = spec.power(0, e, &mut cache)?;
            acc = acc.add(&p.scale(&Rational::from_integer(c.clone())));
        }
        Ok(acc)
    }
}

impl Substitutable for LaurentPoly2 {
    fn compose_gauss(
        &self,
        spec: &SeriesSubstitution,
        order: usize,
    ) -> Result<GaussSeries, AlgebraError> {
        let mut cache = vec![Vec::new(); spec.vars.len()];
        let mut acc = GaussSeries::real(TruncatedSeries::zero(order));
        for ((a, z), c) in self.terms() {
            let pa = spec.power(0, a as i64, &mut cache)?;
            let pz = spec.power(1, z as i64, &mut cache)?;
            acc = acc.add(&pa.mul(&pz).scale(&Rational::from_integer(c.clone())));
        }
        Ok(acc)
    }
}

/// Composes `f` with the substitution and returns the real series through `h^order`.
pub fn series_compose_exp<F: Substitutable>(
    f: &F,
    spec: &SeriesSubstitution,
    order: usize,
) -> Result<TruncatedSeries, AlgebraError> {
    f.compose_gauss(spec, order)?.into_real()
}

/// `a = i e^{N h}`, `z = -i (e^h - e^{-h})`.
pub fn kauffman_substitution(n: i64, order: usize) -> SeriesSubstitution {
    let nn = Rational::from_integer(BigInt::from(n));
    let one = Rational::one();
    let a = GaussSeries::imaginary(TruncatedSeries::exp_linear(order, &nn));
    let a_inv = GaussSeries::imaginary(TruncatedSeries::exp_linear(order, &-nn).neg());
    let sinh2 =
        TruncatedSeries::exp_linear(order, &one).sub(&TruncatedSeries::exp_linear(order, &-one));
    let z = GaussSeries::imaginary(sinh2.neg());
    SeriesSubstitution {
        vars: vec![(a, Some(a_inv)), (z, None)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn constant_one_composes_to_one() {
        let s = series_compose_exp(&LaurentPoly2::one(), &kauffman_substitution(3, 5), 5).unwrap();
        assert_eq!(s, TruncatedSeries::constant(5, int(1)));
    }

    #[test]
    fn lone_a_is_not_real() {
        let spec = kauffman_substitution(2, 2);
        let r = series_compose_exp(&LaurentPoly2::monomial(1, 1, 0), &spec, 2);
        assert_eq!(r, Err(AlgebraError::NonRealResult { order: 0 }));
    }

    #[test]
    fn a_times_inverse_is_one() {
        let spec = kauffman_substitution(4, 5);
        let p = LaurentPoly2::monomial(1, 1, 0) * LaurentPoly2::monomial(1, -1, 0);
        assert_eq!(
            series_compose_exp(&p, &spec, 5).unwrap(),
            TruncatedSeries::constant(5, int(1))
        );
    }

    #[test]
    fn exp_series() {
        let e = TruncatedSeries::exp_linear(3, &int(2));
        assert_eq!(e.coeffs(), &[int(1), int(2), int(2), rat(4, 3)]);
    }

    #[test]
    fn negative_z_power_is_rejected() {
        let spec = kauffman_substitution(2, 3);
        let r = series_compose_exp(&LaurentPoly2::monomial(1, 0, -1), &spec, 3);
        assert_eq!(r, Err(AlgebraError::NotInvertible("z")));
    }
}
