//! Quantum SO(3) invariants of rational surgeries on knots at odd `r`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{
    cyclotomic_invert, cyclotomic_root, matrix_signature, AlgebraError, CyclotomicElement,
    LaurentPoly, Rational, Signature, SymIntMatrix,
};
use crate::knot_model::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum So3Error {
    #[error("r must be an odd integer >= 3, got {0}")]
    InvalidLevel(u32),
    #[error("c_+ vanishes at r = {0}")]
    DegenerateConstant(u32),
    #[error("colored Jones values for colors 1..={need} required at r = {r}, got {have}")]
    MissingColor { r: u32, need: usize, have: usize },
    #[error("linking matrix is singular")]
    SingularLinkingMatrix,
    #[error("continued fraction {0:?} does not evaluate")]
    BadContinuedFraction(Vec<i64>),
    #[error("colored Jones input: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_r(r: u32) -> Result<(), So3Error> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(So3Error::InvalidLevel(r));
    }
    Ok(())
}

/// Field level `2r`, so that `q^{1/2} = zeta_{2r}` is available.
fn level(r: u32) -> u32 {
    2 * r
}

/// `q^{k/2}` at `q = zeta_r`.
fn q_half_pow(r: u32, k: i64) -> CyclotomicElement {
    cyclotomic_root(level(r), k)
}

/// `q^k` at `q = zeta_r`.
fn q_pow(r: u32, k: i64) -> CyclotomicElement {
    q_half_pow(r, 2 * k)
}

/// `[n] = q^{(n-1)/2} + q^{(n-3)/2} + ... + q^{-(n-1)/2}` at `q = zeta_r`.
pub fn quantum_integer(n: i64, r: u32) -> CyclotomicElement {
    let mut acc = CyclotomicElement::zero(level(r));
    for j in 0..n.abs() {
        acc = &acc + &q_half_pow(r, n.abs() - 1 - 2 * j);
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// Negative continued fraction `a_0 - 1/(a_1 - 1/(... - 1/a_l))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Option<Self> {
        if terms.is_empty() {
            None
        } else {
            Some(Self { terms })
        }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// `None` when an intermediate denominator vanishes.
    pub fn evaluate(&self) -> Option<Rational> {
        let mut acc = Rational::from_integer(BigInt::from(*self.terms.last()?));
        for &a in self.terms.iter().rev().skip(1) {
            if acc.is_zero() {
                return None;
            }
            acc = Rational::from_integer(BigInt::from(a)) - acc.recip();
        }
        Some(acc)
    }

    /// Linking matrix of the framed Hopf chain.
    pub fn linking_matrix(&self) -> SymIntMatrix {
        SymIntMatrix::tridiagonal(&self.terms, 1)
    }
}

/// Canonical expansion by repeated ceiling division; `a_i >= 2` for `i >= 1`.
pub fn continued_fraction(s: &Slope) -> ContinuedFraction {
    let (mut num, mut den) = (s.m(), s.n());
    if den < 0 {
        num = -num;
        den = -den;
    }
    let mut terms = Vec::new();
    loop {
        let a = num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0);
        terms.push(a);
        let rest = a * den - num;
        if rest == 0 {
            break;
        }
        num = den;
        den = rest;
    }
    ContinuedFraction { terms }
}

/// `c_± = sum over odd n < r of q^{±(n^2-1)/4} [n]^2`.
pub fn c_plus_minus(r: u32) -> Result<(CyclotomicElement, CyclotomicElement), So3Error> {
    check_r(r)?;
    let mut plus = CyclotomicElement::zero(level(r));
    let mut minus = CyclotomicElement::zero(level(r));
    for n in (1..r as i64).step_by(2) {
        let sq = &quantum_integer(n, r) * &quantum_integer(n, r);
        let e = (n * n - 1) / 4;
        plus = &plus + &(&q_pow(r, e) * &sq);
        minus = &minus + &(&q_pow(r, -e) * &sq);
    }
    if plus.is_zero() {
        return Err(So3Error::DegenerateConstant(r));
    }
    debug_assert_eq!(plus.conj(), minus);
    Ok((plus, minus))
}

/// Coefficients `c^i_r(m/n)`, `i = 1..(r-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub r: u32,
    pub entries: Vec<CyclotomicElement>,
}

impl CoefficientVector {
    /// `c^i_r`, 1-based.
    pub fn get(&self, i: usize) -> &CyclotomicElement {
        &self.entries[i - 1]
    }

    pub fn conj(&self) -> Self {
        Self {
            r: self.r,
            entries: self.entries.iter().map(CyclotomicElement::conj).collect(),
        }
    }
}

/// How the sum over the Hopf chain colors is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainMethod {
    BruteForce,
    #[default]
    TransferMatrix,
}

fn n_of(i: i64, r: u32) -> i64 {
    if i % 2 == 1 {
        i
    } else {
        r as i64 - i
    }
}

fn odd_colors(r: u32) -> Vec<i64> {
    (1..r as i64).step_by(2).collect()
}

/// Chain sums `sum q^{sum (n_k^2-1) a_k / 4} [n_0 n_1] ... [n_{l-1} n_l] [n_l]` indexed by `n_0`.
fn chain_sums(r: u32, tail: &[i64], method: ChainMethod) -> Vec<(i64, CyclotomicElement)> {
    let colors = odd_colors(r);
    let qi = |n: i64| quantum_integer(n, r);
    let twist = |n: i64, a: i64| q_pow(r, (n * n - 1) / 4 * a);
    match method {
        ChainMethod::BruteForce => {
            let link: Vec<Vec<CyclotomicElement>> = colors
                .iter()
                .map(|&a| colors.iter().map(|&b| qi(a * b)).collect())
                .collect();
            let dims: Vec<CyclotomicElement> = colors.iter().map(|&n| qi(n)).collect();
            let twists: Vec<Vec<CyclotomicElement>> = tail
                .iter()
                .map(|&a| colors.iter().map(|&n| twist(n, a)).collect())
                .collect();
            colors
                .iter()
                .enumerate()
                .map(|(i0, &n0)| {
                    let mut total = CyclotomicElement::zero(level(r));
                    if tail.is_empty() {
                        return (n0, dims[i0].clone());
                    }
                    let mut idx = vec![0usize; tail.len()];
                    loop {
                        let mut term = CyclotomicElement::one(level(r));
                        let mut prev = i0;
                        for (k, tw) in twists.iter().enumerate() {
                            let j = idx[k];
                            term = &(&term * &link[prev][j]) * &tw[j];
                            prev = j;
                        }
                        total = &total + &(&term * &dims[prev]);
                        let mut k = 0;
                        while k < idx.len() {
                            idx[k] += 1;
                            if idx[k] < colors.len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if k == idx.len() {
                            break;
                        }
                    }
                    (n0, total)
                })
                .collect()
        }
        ChainMethod::TransferMatrix => {
            // w_n = [n], then w <- T_a w with T_a[n, n'] = [n n'] q^{(n'^2-1) a / 4}, innermost link first.
            let mut w: Vec<CyclotomicElement> = colors.iter().map(|&n| qi(n)).collect();
            for &a in tail.iter().rev() {
                w = colors
                    .iter()
                    .map(|&n| {
                        let mut acc = CyclotomicElement::zero(level(r));
                        for (j, &n2) in colors.iter().enumerate() {
                            acc = &acc + &(&(&qi(n * n2) * &twist(n2, a)) * &w[j]);
                        }
                        acc
                    })
                    .collect();
            }
            colors.into_iter().zip(w).collect()
        }
    }
}

/// Coefficients before the `c_+^{-sigma_+} c_-^{-sigma_-}` prefactor, and the linking-matrix inertia.
pub fn unnormalized_coefficients(
    r: u32,
    cf: &ContinuedFraction,
    method: ChainMethod,
) -> Result<(Vec<CyclotomicElement>, Signature), So3Error> {
    check_r(r)?;
    let sig = matrix_signature(&cf.linking_matrix());
    if sig.nullity != 0 {
        return Err(So3Error::SingularLinkingMatrix);
    }
    let a0 = cf.terms[0];
    let sums = chain_sums(r, &cf.terms[1..], method);
    let entries = (1..=(r as i64 - 1) / 2)
        .map(|i| {
            let n = n_of(i, r);
            let s = &sums.iter().find(|(c, _)| *c == n).expect("odd color").1;
            &q_pow(r, (n * n - 1) / 4 * a0) * s
        })
        .collect();
    Ok((entries, sig))
}

/// `c_+^{-sigma_+} c_-^{-sigma_-}`.
fn prefactor(r: u32, sig: &Signature) -> Result<CyclotomicElement, So3Error> {
    static INVERSES: Mutex<BTreeMap<u32, (CyclotomicElement, CyclotomicElement)>> =
        Mutex::new(BTreeMap::new());
    let cached = INVERSES.lock().expect("inverse cache").get(&r).cloned();
    let (inv_p, inv_m) = match cached {
        Some(pair) => pair,
        None => {
            let (cp, cm) = c_plus_minus(r)?;
            let pair = (cyclotomic_invert(&cp)?, cyclotomic_invert(&cm)?);
            INVERSES
                .lock()
                .expect("inverse cache")
                .insert(r, pair.clone());
            pair
        }
    };
    Ok(&inv_p.pow(sig.plus as i64)? * &inv_m.pow(sig.minus as i64)?)
}

pub fn coefficient_vector_for(
    r: u32,
    cf: &ContinuedFraction,
    method: ChainMethod,
) -> Result<CoefficientVector, So3Error> {
    let (raw, sig) = unnormalized_coefficients(r, cf, method)?;
    let pre = prefactor(r, &sig)?;
    Ok(CoefficientVector {
        r,
        entries: raw.iter().map(|c| &pre * c).collect(),
    })
}

/// `v(r, m/n)` from the canonical continued fraction.
pub fn coefficient_vector(r: u32, s: &Slope) -> Result<CoefficientVector, So3Error> {
    coefficient_vector_for(r, &continued_fraction(s), ChainMethod::TransferMatrix)
}

/// Values `Q^{V_i}(K_0)` at `q = zeta_r` for colors `i = 1..(r-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredJonesVector {
    pub r: u32,
    pub entries: Vec<CyclotomicElement>,
}

/// `V(t)` at `t = q^k`, with `t^{1/2} = q^{k/2}`.
fn jones_at(jones: &LaurentPoly, r: u32, k: i64) -> CyclotomicElement {
    let mut acc = CyclotomicElement::zero(level(r));
    for (e2, c) in jones.terms() {
        acc = &acc + &q_half_pow(r, k * e2).scale(&Rational::from_integer(c.clone()));
    }
    acc
}

/// `V_K(zeta_r)`.
pub fn jones_at_root(jones: &LaurentPoly, r: u32) -> CyclotomicElement {
    jones_at(jones, r, 1)
}

impl ColoredJonesVector {
    pub fn new(r: u32, entries: Vec<CyclotomicElement>) -> Result<Self, So3Error> {
        check_r(r)?;
        let need = (r as usize - 1) / 2;
        if entries.len() != need {
            return Err(So3Error::MissingColor {
                r,
                need,
                have: entries.len(),
            });
        }
        if entries.iter().any(|e| e.level() != level(r)) {
            return Err(So3Error::Input(format!(
                "entries must lie in Q(zeta_{})",
                level(r)
            )));
        }
        Ok(Self { r, entries })
    }

    /// Colors 1 and 2 from the Jones polynomial: `1` and `[2] V_K(q^{-1})`.
    /// Complete only for `r = 5`.
    pub fn from_jones(r: u32, jones: &LaurentPoly) -> Result<Self, So3Error> {
        check_r(r)?;
        let mut entries = vec![CyclotomicElement::one(level(r))];
        if r >= 5 {
            entries.push(&quantum_integer(2, r) * &jones_at(jones, r, -1));
        }
        Self::new(r, entries)
    }

    /// The unknot: `Q^{V_i} = [i]`.
    pub fn unknot(r: u32) -> Result<Self, So3Error> {
        check_r(r)?;
        Self::new(
            r,
            (1..=(r as i64 - 1) / 2)
                .map(|i| quantum_integer(i, r))
                .collect(),
        )
    }

    /// Parses `{"knot": ..., "r": ..., "colors": [[...], ...]}` where each color is a list of
    /// rational coefficients (numbers or `"p/q"` strings) of powers of `zeta_{2r}`.
    pub fn from_json(text: &str) -> Result<(String, Self), So3Error> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| So3Error::Input(e.to_string()))?;
        let knot = v["knot"]
            .as_str()
            .ok_or_else(|| So3Error::Input("missing \"knot\"".into()))?
            .to_string();
        let r = v["r"]
            .as_u64()
            .ok_or_else(|| So3Error::Input("missing \"r\"".into()))? as u32;
        check_r(r)?;
        let colors = v["colors"]
            .as_array()
            .ok_or_else(|| So3Error::Input("missing \"colors\"".into()))?;
        let mut entries = Vec::new();
        for c in colors {
            let coeffs = c
                .as_array()
                .ok_or_else(|| So3Error::Input("color must be a list".into()))?;
            let poly = coeffs
                .iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(CyclotomicElement::from_poly(level(r), poly));
        }
        Ok((knot, Self::new(r, entries)?))
    }
}

fn parse_rational(v: &serde_json::Value) -> Result<Rational, So3Error> {
    if let Some(i) = v.as_i64() {
        return Ok(Rational::from_integer(BigInt::from(i)));
    }
    let s = v
        .as_str()
        .ok_or_else(|| So3Error::Input(format!("bad coefficient {v}")))?;
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| So3Error::Input(format!("bad coefficient {s}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| So3Error::Input(format!("bad coefficient {s}")))?;
    if d.is_zero() {
        return Err(So3Error::Input(format!("zero denominator in {s}")));
    }
    Ok(Rational::new(n, d))
}

fn dot(a: &[CyclotomicElement], b: &[CyclotomicElement]) -> CyclotomicElement {
    let mut acc = CyclotomicElement::zero(a[0].level());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// `tau_r(S^3_K(m/n)) = V_r(K) . v(r, m/n)`.
pub fn tau_so3_surgery(
    r: u32,
    colors: &ColoredJonesVector,
    s: &Slope,
) -> Result<CyclotomicElement, So3Error> {
    if colors.r != r {
        return Err(So3Error::Input(format!(
            "colored Jones data is for r = {}, not {r}",
            colors.r
        )));
    }
    let v = coefficient_vector(r, s)?;
    Ok(dot(&colors.entries, &v.entries))
}

/// `tau_r` of the lens space obtained by `m/n` surgery on the unknot.
pub fn lens_space_tau(r: u32, s: &Slope) -> Result<CyclotomicElement, So3Error> {
    tau_so3_surgery(r, &ColoredJonesVector::unknot(r)?, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTypeVerdict {
    /// `S^3_K(m/n)` and `-S^3_K(-m/n)` are distinguished.
    Obstructed,
    NotObstructed,
}

/// `V_r(K).v = conj(V_r(K)).v` tested two ways: with `v` normalized by field inversion, and
/// with both sides multiplied through by `c_+^{sigma_+} c_-^{sigma_-}`.
pub fn zero_type_obstruction_general(
    colors: &ColoredJonesVector,
    s: &Slope,
) -> Result<ZeroTypeVerdict, So3Error> {
    let r = colors.r;
    let cf = continued_fraction(s);
    let conj: Vec<CyclotomicElement> = colors.entries.iter().map(CyclotomicElement::conj).collect();
    let (raw, sig) = unnormalized_coefficients(r, &cf, ChainMethod::TransferMatrix)?;
    let cleared = dot(&colors.entries, &raw) != dot(&conj, &raw);
    let pre = prefactor(r, &sig)?;
    let v: Vec<CyclotomicElement> = raw.iter().map(|c| &pre * c).collect();
    let inverted = dot(&colors.entries, &v) != dot(&conj, &v);
    assert_eq!(
        cleared, inverted,
        "inversion-free and inverted obstruction tests disagree"
    );
    Ok(if inverted {
        ZeroTypeVerdict::Obstructed
    } else {
        ZeroTypeVerdict::NotObstructed
    })
}

/// The `r = 5` test: obstructed when `V_K(zeta_5)` is not real and `c^2_5(m/n) != 0`.
pub fn zero_type_obstruction(
    r: u32,
    jones: &LaurentPoly,
    s: &Slope,
) -> Result<ZeroTypeVerdict, So3Error> {
    if r != 5 {
        let need = (r as usize).saturating_sub(1) / 2;
        return Err(So3Error::MissingColor {
            r,
            need,
            have: 2.min(need),
        });
    }
    let real = jones_at_root(jones, 5).is_real();
    let c2 = coefficient_vector(5, s)?.get(2).clone();
    Ok(if !real && !c2.is_zero() {
        ZeroTypeVerdict::Obstructed
    } else {
        ZeroTypeVerdict::NotObstructed
    })
}

/// Slopes with `c^2_5(m/n) != 0`, where the `r = 5` test can detect a non-real `V_K(zeta_5)`.
pub fn detecting_slopes(slopes: &[Slope]) -> Result<Vec<Slope>, So3Error> {
    let mut out = Vec::new();
    for s in slopes {
        if !coefficient_vector(5, s)?.get(2).is_zero() {
            out.push(*s);
        }
    }
    Ok(out)
}

/// The subset of `detecting` at which `zero_type_obstruction(5, jones, _)` fires.
pub fn obstructed_slopes(jones: &LaurentPoly, detecting: &[Slope]) -> Vec<Slope> {
    if jones_at_root(jones, 5).is_real() {
        Vec::new()
    } else {
        detecting.to_vec()
    }
}
