use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Rational;

/// Symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymIntMatrix {
    entries: Vec<Vec<i64>>,
}

impl SymIntMatrix {
    /// Returns `None` unless `entries` is square and symmetric.
    pub fn new(entries: Vec<Vec<i64>>) -> Option<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return None;
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return None;
                }
            }
        }
        Some(Self { entries })
    }

    /// Tridiagonal matrix with the given diagonal and all off-diagonal entries `off`.
    pub fn tridiagonal(diag: &[i64], off: i64) -> Self {
        let n = diag.len();
        let mut entries = vec![vec![0; n]; n];
        for i in 0..n {
            entries[i][i] = diag[i];
            if i + 1 < n {
                entries[i][i + 1] = off;
                entries[i + 1][i] = off;
            }
        }
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub nullity: usize,
}

impl Signature {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

/// Counts positive, negative and zero eigenvalues by symmetric Gaussian elimination
/// over the rationals, using 2x2 block pivots when every remaining diagonal entry vanishes.
pub fn matrix_signature(m: &SymIntMatrix) -> Signature {
    let mut a: Vec<Vec<Rational>> = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..m.dim()).collect();
    let mut sig = Signature {
        plus: 0,
        minus: 0,
        nullity: 0,
    };

    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let p = live.swap_remove(pos);
            let piv = a[p][p].clone();
            if piv.is_positive() {
                sig.plus += 1;
            } else {
                sig.minus += 1;
            }
            for &i in &live {
                let f = &a[i][p] / &piv;
                if f.is_zero() {
                    continue;
                }
                for &j in &live {
                    let d = &f * &a[p][j];
                    a[i][j] -= d;
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((p, q)) = pair else {
            sig.nullity += live.len();
            break;
        };
        // The block [[0, b], [b, 0]] has one positive and one negative eigenvalue.
        sig.plus += 1;
        sig.minus += 1;
        live.retain(|&i| i != p && i != q);
        let b = a[p][q].clone();
        for &i in &live {
            // Row i minus (a_iq/b) row p minus (a_ip/b) row q clears columns p and q.
            let fp = &a[i][q] / &b;
            let fq = &a[i][p] / &b;
            for &j in &live {
                let d = &fp * &a[p][j] + &fq * &a[q][j];
                a[i][j] -= d;
            }
        }
    }
    sig
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(rows: Vec<Vec<i64>>) -> (usize, usize, usize) {
        let s = matrix_signature(&SymIntMatrix::new(rows).unwrap());
        (s.plus, s.minus, s.nullity)
    }

    #[test]
    fn small_signatures() {
        assert_eq!(sig(vec![vec![5]]), (1, 0, 0));
        assert_eq!(sig(vec![vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(sig(vec![vec![4, 1], vec![1, 2]]), (2, 0, 0));
        assert_eq!(sig(vec![]), (0, 0, 0));
        assert_eq!(sig(vec![vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(
            sig(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
            (1, 2, 0)
        );
    }

    #[test]
    fn asymmetric_rejected() {
        assert!(SymIntMatrix::new(vec![vec![0, 1], vec![2, 0]]).is_none());
    }

    #[test]
    fn bareiss_small() {
        let m: Vec<Vec<BigInt>> = vec![vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        assert_eq!(bareiss_determinant(&m), BigInt::from(-4));
    }
}
