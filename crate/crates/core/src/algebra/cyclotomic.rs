use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rational};

/// Coefficients (lowest degree first) of the `level`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(level: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&level) {
        return p.clone();
    }
    assert!(level >= 1, "cyclotomic level must be positive");
    // x^L - 1 divided by every Phi_d with d a proper divisor of L.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); level as usize + 1];
    num[0] = BigInt::from(-1);
    num[level as usize] = BigInt::one();
    for d in 1..level {
        if level.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(level, p.clone());
    p
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Element of `Q[x]/(Phi_L(x))`, i.e. of the cyclotomic field `Q(zeta_L)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn degree_of(level: u32) -> usize {
        cyclotomic_polynomial(level).len() - 1
    }

    pub fn zero(level: u32) -> Self {
        Self {
            level,
            coeffs: vec![Rational::zero(); Self::degree_of(level)],
        }
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(level, Rational::one())
    }

    pub fn from_rational(level: u32, r: Rational) -> Self {
        Self::from_poly(level, vec![r])
    }

    pub fn from_int(level: u32, n: i64) -> Self {
        Self::from_rational(level, Rational::from_integer(BigInt::from(n)))
    }

    /// Reduces an arbitrary polynomial in `x = zeta_L` (lowest degree first).
    pub fn from_poly(level: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(level);
        let d = phi.len() - 1;
        while poly.len() > d {
            let top = poly.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (j, pc) in phi.iter().enumerate().take(d) {
                poly[shift + j] -= &top * Rational::from_integer(pc.clone());
            }
        }
        poly.resize(d, Rational::zero());
        Self {
            level,
            coeffs: poly,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.level)
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let l = self.level as usize;
        let mut poly = vec![Rational::zero(); l];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(l - k) % l] += c;
        }
        Self::from_poly(self.level, poly)
    }

    /// True when the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self, AlgebraError> {
        let base = if n < 0 {
            cyclotomic_invert(self)?
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.level);
        let mut b = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    fn check_level(&self, other: &Self) {
        assert_eq!(
            self.level,
            other.level,
            "{}",
            AlgebraError::LevelMismatch(self.level, other.level)
        );
    }
}

/// `zeta_level^power`.
pub fn cyclotomic_root(level: u32, power: i64) -> CyclotomicElement {
    let l = level as i64;
    let k = power.rem_euclid(l) as usize;
    let mut poly = vec![Rational::zero(); k + 1];
    poly[k] = Rational::one();
    CyclotomicElement::from_poly(level, poly)
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    trim(&mut rem);
    (q, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Multiplicative inverse via the extended Euclidean algorithm against `Phi_L`.
pub fn cyclotomic_invert(x: &CyclotomicElement) -> Result<CyclotomicElement, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroDivision);
    }
    let phi: Vec<Rational> = cyclotomic_polynomial(x.level)
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    let mut f = x.coeffs.clone();
    trim(&mut f);
    // Invariant: s * x == r (mod phi).
    let (mut r0, mut r1) = (phi, f);
    let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
    while r1.len() > 1 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r1.is_empty() {
        return Err(AlgebraError::ZeroDivision);
    }
    let c = r1[0].recip();
    let inv: Vec<Rational> = s1.iter().map(|v| v * &c).collect();
    Ok(CyclotomicElement::from_poly(x.level, inv))
}

impl Add<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_level(rhs);
        CyclotomicElement {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_level(rhs);
        CyclotomicElement {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.check_level(rhs);
        let (an, ad) = integral_parts(&self.coeffs);
        let (bn, bd) = integral_parts(&rhs.coeffs);
        let mut prod = vec![BigInt::zero(); an.len() + bn.len()];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let phi = cyclotomic_polynomial(self.level);
        let d = phi.len() - 1;
        while prod.len() > d {
            let top = prod.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = prod.len() - d;
            for (j, pc) in phi.iter().enumerate().take(d) {
                prod[shift + j] -= &top * pc;
            }
        }
        prod.resize(d, BigInt::zero());
        let den = ad * bd;
        CyclotomicElement {
            level: self.level,
            coeffs: prod
                .into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        }
    }
}

/// Integer numerators over a common denominator.
fn integral_parts(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

super::laurent::forward_owned!(CyclotomicElement, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (_, true) => write!(f, "z^{k}")?,
                (1, false) => write!(f, "{abs}*z")?,
                (_, false) => write!(f, "{abs}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (z = zeta_{})", self.level)
    }
}
