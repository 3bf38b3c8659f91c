use super::{count_faces, KnotDiagram, KnotError};

/// Converts a Dowker–Thistlethwaite code to a diagram.
///
/// Entry `i` pairs the odd label `2i+1` with the even label `|code[i]|`; a
/// negative entry marks the even passage as the over-crossing. The planar
/// embedding is recovered by searching crossing handedness for a choice with
/// `n + 2` faces. A DT code fixes the knot only up to mirror image, and the
/// first planar choice found is returned.
pub fn dt_to_pd(code: &[i64]) -> Result<KnotDiagram, KnotError> {
    let n = code.len();
    if n == 0 {
        return Ok(KnotDiagram::unknot());
    }
    let m = 2 * n as i64;
    let mut partner = vec![0usize; 2 * n + 1];
    for (i, &e) in code.iter().enumerate() {
        let odd = 2 * i as i64 + 1;
        let even = e.abs();
        if even % 2 != 0 || even < 2 || even > m || partner[even as usize] != 0 {
            return Err(KnotError::Validation(format!("bad DT entry {e}")));
        }
        partner[odd as usize] = even as usize;
        partner[even as usize] = odd as usize;
    }
    // Arc k runs from passage k to passage k+1; arc 2n closes the loop.
    let arc_in = |p: usize| if p == 1 { 2 * n as u32 } else { p as u32 - 1 };
    let base: Vec<(u32, u32, u32, u32)> = code
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let odd = 2 * i + 1;
            let even = e.unsigned_abs() as usize;
            let (under, over) = if e > 0 { (even, odd) } else { (odd, even) };
            (arc_in(under), under as u32, arc_in(over), over as u32)
        })
        .collect();
    if n > 24 {
        return Err(KnotError::Validation(
            "DT code too long for handedness search".into(),
        ));
    }
    for mask in 0u32..(1 << (n - 1)) {
        let crossings: Vec<[u32; 4]> = base
            .iter()
            .enumerate()
            .map(|(i, &(ui, uo, oi, oo))| {
                if i > 0 && mask >> (i - 1) & 1 == 1 {
                    [ui, oi, uo, oo]
                } else {
                    [ui, oo, uo, oi]
                }
            })
            .collect();
        if count_faces(&crossings) == n + 2 {
            return KnotDiagram::from_crossings(crossings);
        }
    }
    Err(KnotError::Validation(
        "DT code is not realisable in the plane".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_from_dt() {
        let d = dt_to_pd(&[4, 6, 2]).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn non_realisable() {
        assert!(dt_to_pd(&[3, 6, 2]).is_err());
    }
}
