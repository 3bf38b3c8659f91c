use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use super::KnotError;
use crate::algebra::Rational;

/// Surgery slope `m/n` with `gcd(m, n) = 1`, `m > 0` and `n != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    m: i64,
    n: i64,
}

/// Reduces `m/n` to lowest terms with a positive numerator.
pub fn normalize_slope(m: i64, n: i64) -> Result<Slope, KnotError> {
    if m == 0 {
        return Err(KnotError::InvalidSlope(format!("{m}/{n} is longitudinal")));
    }
    if n == 0 {
        return Err(KnotError::InvalidSlope(format!("{m}/{n} is meridional")));
    }
    let g = m.gcd(&n);
    let (mut m, mut n) = (m / g, n / g);
    if m < 0 {
        m = -m;
        n = -n;
    }
    Ok(Slope { m, n })
}

impl Slope {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.m), BigInt::from(self.n))
    }

    /// The slope `-m/n`.
    pub fn negated(&self) -> Slope {
        Slope {
            m: self.m,
            n: -self.n,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.m)
        } else {
            write!(f, "{}/{}", self.m, self.n)
        }
    }
}

impl FromStr for Slope {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KnotError::InvalidSlope(format!("cannot parse '{s}'"));
        let (m, n) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        normalize_slope(m, n)
    }
}

/// Sign pattern of a pair of surgery slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurgeryType {
    /// The slopes sum to zero.
    ZeroType,
    /// Both slopes have the same sign.
    PlusType,
    /// Opposite signs with non-zero sum.
    MinusType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopePair {
    pub first: Slope,
    pub second: Slope,
    pub surgery_type: SurgeryType,
}

impl SlopePair {
    pub fn new(first: Slope, second: Slope) -> Self {
        let sum = first.value() + second.value();
        let surgery_type = if num_traits::Zero::is_zero(&sum) {
            SurgeryType::ZeroType
        } else if first.n.signum() == second.n.signum() {
            SurgeryType::PlusType
        } else {
            SurgeryType::MinusType
        };
        Self {
            first,
            second,
            surgery_type,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize_slope(-7, -2).unwrap(), Slope { m: 7, n: 2 });
        assert_eq!(normalize_slope(4, 2).unwrap(), Slope { m: 2, n: 1 });
        assert_eq!(normalize_slope(-3, 6).unwrap(), Slope { m: 1, n: -2 });
        assert!(normalize_slope(0, 1).is_err());
        assert!(normalize_slope(1, 0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("7/-2".parse::<Slope>().unwrap(), Slope { m: 7, n: -2 });
        assert_eq!("5".parse::<Slope>().unwrap(), Slope { m: 5, n: 1 });
        assert!("x/2".parse::<Slope>().is_err());
        assert_eq!(Slope { m: 7, n: -2 }.to_string(), "7/-2");
    }

    #[test]
    fn pair_types() {
        let s = |m, n| normalize_slope(m, n).unwrap();
        assert_eq!(
            SlopePair::new(s(5, 2), s(5, -2)).surgery_type,
            SurgeryType::ZeroType
        );
        assert_eq!(
            SlopePair::new(s(5, 2), s(5, 3)).surgery_type,
            SurgeryType::PlusType
        );
        assert_eq!(
            SlopePair::new(s(5, 2), s(5, -3)).surgery_type,
            SurgeryType::MinusType
        );
    }
}
