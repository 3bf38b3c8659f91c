//! Heegaard Floer rank bookkeeping for rational surgeries.

use thiserror::Error;

use crate::algebra::Rational;
use crate::knot_model::{Slope, SlopePair, SurgeryType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("det = {det} and |tau| = {tau_abs} do not give a non-negative even C_K")]
    NotThinConsistent { det: i64, tau_abs: i64 },
    #[error("delta system has no non-negative solution: {0}")]
    InconsistentSystem(String),
    #[error("invalid rank profile: {0}")]
    InvalidProfile(String),
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `C_K = (det - 2|tau| - 1) / 2` for a homologically thin knot.
pub fn ck_thin(det: i64, tau_abs: i64) -> Result<i64, FloerError> {
    let twice = det - 2 * tau_abs - 1;
    if twice < 0 || twice % 4 != 0 {
        return Err(FloerError::NotThinConsistent { det, tau_abs });
    }
    Ok(twice / 2)
}

/// Knot Floer complex of a thin knot, described by its staircase and square counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinComplexModel {
    pub genus: usize,
    pub tau_abs: i64,
    /// `|d_0|, ..., |d_g|`.
    pub d_abs: Vec<i64>,
    /// `eps_0, ..., eps_g`.
    pub epsilon: Vec<i64>,
    /// `delta_1, ..., delta_g`, stored at indices `0..g`.
    pub delta: Vec<i64>,
}

impl ThinComplexModel {
    pub fn delta(&self, j: usize) -> i64 {
        self.delta[j - 1]
    }

    /// `4 (delta_g + ... + delta_1) - 2 delta_1`.
    pub fn c_k(&self) -> i64 {
        if self.genus == 0 {
            return 0;
        }
        4 * self.delta.iter().sum::<i64>() - 2 * self.delta[0]
    }
}

/// Solves the delta system top-down from the absolute Alexander coefficients.
pub fn solve_delta_system(d_abs: &[i64], tau_abs: i64) -> Result<ThinComplexModel, FloerError> {
    if d_abs.is_empty() {
        return Err(FloerError::InconsistentSystem(
            "no Alexander coefficients".into(),
        ));
    }
    let g = d_abs.len() - 1;
    if tau_abs as usize > g {
        return Err(FloerError::InconsistentSystem(format!(
            "|tau| = {tau_abs} exceeds degree {g}"
        )));
    }
    let epsilon: Vec<i64> = (0..=g).map(|i| i64::from(i as i64 <= tau_abs)).collect();
    let mut delta = vec![0i64; g + 2];
    // delta[j] holds delta_j; delta[g + 1] = 0 pads the recursion.
    for j in (1..=g).rev() {
        let above = if j < g { 2 * delta[j + 1] } else { 0 };
        let above2 = if j + 2 <= g { delta[j + 2] } else { 0 };
        let v = d_abs[j] - epsilon[j] - above - above2;
        if v < 0 {
            return Err(FloerError::InconsistentSystem(format!("delta_{j} = {v}")));
        }
        delta[j] = v;
    }
    let d0 = if g == 0 {
        epsilon[0]
    } else if g == 1 {
        epsilon[0] + 2 * delta[1]
    } else {
        epsilon[0] + 2 * delta[1] + 2 * delta[2]
    };
    if d0 != d_abs[0] {
        return Err(FloerError::InconsistentSystem(format!(
            "|d_0| = {} but the system gives {d0}",
            d_abs[0]
        )));
    }
    Ok(ThinComplexModel {
        genus: g,
        tau_abs,
        d_abs: d_abs.to_vec(),
        epsilon,
        delta: delta[1..=g].to_vec(),
    })
}

/// `nu`, `C_K` and genus of a knot, taken in the chirality with the larger `nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    nu: i64,
    c_k: i64,
    genus: i64,
}

impl RankProfile {
    /// Builds a profile; `nu` and `nu_mirror` may be given in either order.
    pub fn new(nu: i64, nu_mirror: i64, c_k: i64, genus: i64) -> Result<Self, FloerError> {
        let nu = nu.max(nu_mirror);
        if nu < 0 {
            return Err(FloerError::InvalidProfile(format!(
                "max nu = {nu} is negative"
            )));
        }
        if c_k < 0 || c_k % 2 != 0 {
            return Err(FloerError::InvalidProfile(format!(
                "C_K = {c_k} is not a non-negative even integer"
            )));
        }
        if genus < 1 {
            return Err(FloerError::InvalidProfile("genus must be positive".into()));
        }
        if nu > genus {
            return Err(FloerError::InvalidProfile(format!(
                "nu = {nu} exceeds genus {genus}"
            )));
        }
        if c_k == 0 && nu != genus {
            return Err(FloerError::InvalidProfile(format!(
                "C_K = 0 forces nu = genus, got nu = {nu}"
            )));
        }
        Ok(Self { nu, c_k, genus })
    }

    pub fn nu(&self) -> i64 {
        self.nu
    }

    pub fn c_k(&self) -> i64 {
        self.c_k
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }
}

/// Rank of `HF-hat` of `m/n` surgery.
pub fn hf_rank(p: &RankProfile, slope: &Slope) -> i64 {
    let (m, n) = (slope.m(), slope.n());
    let (nu, c) = (p.nu, p.c_k);
    if n > 0 {
        if m >= (2 * nu - 1) * n {
            m + n * c
        } else {
            -m + (4 * nu - 2) * n + n * c
        }
    } else if nu > 0 {
        m - (4 * nu - 2) * n - n * c
    } else {
        m - n * c
    }
}

/// What the rank formula allows for a `+`-type pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlusTypeRule {
    Forbidden,
    /// Both slopes at least this value.
    SlopesAtLeast(i64),
}

/// What the rank formula allows for a `-`-type pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinusTypeRule {
    /// `n + n' = 0`.
    SumZero,
    /// `(n+n')/m` equals `below` when `m/n <= 2nu-1`, and `(4nu-2)(-n')/(m C_K)` when `m/n >= 2nu-1`.
    Equalities {
        threshold: i64,
        below: Rational,
        above_allowed: bool,
    },
}

/// Admissible slope pairs for a chirally cosmetic surgery `m/n`, `m/n'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeConstraints {
    pub profile: RankProfile,
    pub plus_type: PlusTypeRule,
    pub minus_type: MinusTypeRule,
    /// Strict upper bound on `|(n+n')/m|`.
    pub bound: Rational,
}

pub fn slope_pair_constraints(p: &RankProfile) -> SlopeConstraints {
    let plus_type = if p.c_k == 0 {
        PlusTypeRule::SlopesAtLeast(2 * p.genus - 1)
    } else {
        PlusTypeRule::Forbidden
    };
    let minus_type = if p.nu == 0 {
        MinusTypeRule::SumZero
    } else {
        MinusTypeRule::Equalities {
            threshold: 2 * p.nu - 1,
            below: q(2, 4 * p.nu - 2 + p.c_k),
            above_allowed: p.c_k != 0,
        }
    };
    let bound = if p.c_k == 0 {
        if p.genus == 1 {
            // trefoil
            q(1, 1)
        } else {
            q(2, 2 * p.genus - 1)
        }
    } else {
        q(2, p.c_k)
    };
    SlopeConstraints {
        profile: *p,
        plus_type,
        minus_type,
        bound,
    }
}

impl SlopeConstraints {
    /// Whether the rank formula allows `S^3_K(first) = -S^3_K(second)`.
    pub fn admits(&self, pair: &SlopePair) -> bool {
        let (a, b) = (pair.first, pair.second);
        if a.m() != b.m() || a == b {
            return false;
        }
        let (hi, lo) = if a.value() > b.value() {
            (a, b)
        } else {
            (b, a)
        };
        let m = hi.m();
        let (n, n2) = (hi.n(), lo.n());
        let ratio = q(n + n2, m);
        let abs = if ratio < q(0, 1) {
            -ratio.clone()
        } else {
            ratio.clone()
        };
        if abs >= self.bound {
            return false;
        }
        match pair.surgery_type {
            SurgeryType::ZeroType => true,
            SurgeryType::PlusType => match self.plus_type {
                PlusTypeRule::Forbidden => false,
                PlusTypeRule::SlopesAtLeast(s) => n > 0 && m >= s * n && m >= s * n2,
            },
            SurgeryType::MinusType => match &self.minus_type {
                MinusTypeRule::SumZero => n + n2 == 0,
                MinusTypeRule::Equalities {
                    threshold,
                    below,
                    above_allowed,
                } => {
                    if n + n2 <= 0 {
                        return false;
                    }
                    let mut ok = true;
                    if m <= threshold * n {
                        ok &= ratio == *below;
                    }
                    if m >= threshold * n {
                        ok &= *above_allowed
                            && ratio
                                == q((4 * self.profile.nu - 2) * -n2, m * self.profile.c_k.max(1));
                    }
                    ok
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::normalize_slope;

    fn s(m: i64, n: i64) -> Slope {
        normalize_slope(m, n).unwrap()
    }

    #[test]
    fn ck_examples() {
        assert_eq!(ck_thin(3, 1), Ok(0));
        assert_eq!(ck_thin(11, 1), Ok(4));
        assert_eq!(ck_thin(1, 0), Ok(0));
        assert!(ck_thin(3, 2).is_err());
        assert!(ck_thin(7, 0).is_err());
    }

    #[test]
    fn delta_examples() {
        let m = solve_delta_system(&[3, 3, 1], 1).unwrap();
        assert_eq!(m.delta, vec![0, 1]);
        assert_eq!(m.c_k(), 4);
        let m = solve_delta_system(&[1, 1], 1).unwrap();
        assert_eq!(m.delta, vec![0]);
        let m = solve_delta_system(&[3, 1], 0).unwrap();
        assert_eq!(m.delta, vec![1]);
        assert_eq!(m.c_k(), 2);
        assert!(solve_delta_system(&[1, 3], 0).is_err());
    }

    #[test]
    fn rank_examples() {
        let tref = RankProfile::new(1, -1, 0, 1).unwrap();
        assert_eq!(hf_rank(&tref, &s(7, 2)), 7);
        assert_eq!(hf_rank(&tref, &s(1, 2)), 3);
        let p = RankProfile::new(0, 0, 2, 1).unwrap();
        assert_eq!(hf_rank(&p, &s(5, -1)), 7);
    }

    #[test]
    fn constraint_examples() {
        let p = RankProfile::new(0, 0, 2, 1).unwrap();
        assert_eq!(
            slope_pair_constraints(&p).minus_type,
            MinusTypeRule::SumZero
        );
        let p = RankProfile::new(1, 0, 4, 2).unwrap();
        assert_eq!(slope_pair_constraints(&p).bound, q(1, 2));
    }

    #[test]
    fn profile_normalization() {
        assert_eq!(RankProfile::new(-1, 2, 0, 2).unwrap().nu(), 2);
        assert!(RankProfile::new(1, 0, 0, 2).is_err());
        assert!(RankProfile::new(3, 0, 2, 2).is_err());
    }
}
