use std::collections::HashMap;

use num_bigint::BigInt;

use super::{SkeinError, SkeinLimits};
use crate::algebra::{LaurentPoly, LaurentPoly2};
use crate::knot_model::KnotDiagram;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Jones polynomial by the Kauffman bracket state sum, normalised so the unknot is 1.
///
/// The A-smoothing at `X(i,j,k,l)` joins `i` with `j` and `k` with `l`.
/// The result uses `t = A^{-4}`.
pub fn jones(d: &KnotDiagram, limits: &SkeinLimits) -> Result<LaurentPoly, SkeinError> {
    let n = d.n_crossings();
    if n > limits.max_state_sum_crossings {
        return Err(SkeinError::ResourceLimit {
            what: "state-sum crossings",
            limit: limits.max_state_sum_crossings as u64,
        });
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let labels = 2 * n;
    // (A exponent, loops) -> number of states
    let mut tally: HashMap<(i64, usize), i64> = HashMap::new();
    let mut parent = vec![0usize; labels + 1];
    for state in 0u64..(1 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut comps = labels;
        let mut a_exp = 0i64;
        for (c, x) in d.crossings().iter().enumerate() {
            let (pairs, e) = if state >> c & 1 == 0 {
                ([(x[0], x[1]), (x[2], x[3])], 1)
            } else {
                ([(x[0], x[3]), (x[1], x[2])], -1)
            };
            a_exp += e;
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
                if ru != rv {
                    parent[ru] = rv;
                    comps -= 1;
                }
            }
        }
        *tally.entry((a_exp, comps)).or_default() += 1;
    }
    // <D> as a polynomial in A (doubled exponents), loop value -A^2 - A^{-2}.
    let delta = LaurentPoly::from_int_terms(&[(2, -1), (-2, -1)]);
    let mut bracket = LaurentPoly::zero();
    let mut delta_pows: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort();
    for ((a_exp, loops), count) in keys {
        while delta_pows.len() < loops {
            let next = delta_pows.last().expect("non-empty") * &delta;
            delta_pows.push(next);
        }
        let term = &LaurentPoly::monomial(count, 2 * a_exp) * &delta_pows[loops - 1];
        bracket += &term;
    }
    let w = d.writhe();
    let framing = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, -6 * w);
    a_to_t(&(&framing * &bracket))
}

/// Rewrites a polynomial in `A` as one in `t = A^{-4}`.
fn a_to_t(p: &LaurentPoly) -> Result<LaurentPoly, SkeinError> {
    let mut out = LaurentPoly::zero();
    for (e2, c) in p.terms() {
        // A^{e2/2} = t^{-e2/8}; doubled t exponent is -e2/4.
        if e2 % 4 != 0 {
            return Err(SkeinError::Malformed(format!(
                "A-exponent {} not a multiple of 2",
                e2 / 2
            )));
        }
        out.add_term(-e2 / 4, c.clone());
    }
    Ok(out)
}

/// Jones polynomial from the Kauffman polynomial via `F(-A^3, A + A^{-1}) = V(A^{-4})`.
pub fn jones_from_kauffman(f: &LaurentPoly2) -> Result<LaurentPoly, SkeinError> {
    let a = LaurentPoly::monomial(BigInt::from(-1), 6);
    let a_inv = LaurentPoly::monomial(BigInt::from(-1), -6);
    let z = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]);
    let in_a = f
        .substitute(&a, &a_inv, &z)
        .ok_or_else(|| SkeinError::Malformed("negative power of z".into()))?;
    a_to_t(&in_a)
}
