use std::collections::HashMap;
use std::fmt;

use super::KnotError;

/// Validated single-component oriented knot diagram.
///
/// Each crossing `[i, j, k, l]` lists arc labels counterclockwise starting at the
/// incoming under-arc, so the under-strand runs `i -> k`. The over-strand runs
/// either `l -> j` (positive crossing) or `j -> l` (negative crossing). Arcs are
/// labelled `1..=2n` in the order met when travelling along the knot, starting
/// with the arc entering the first crossing from below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    crossings: Vec<[u32; 4]>,
    over_in: Vec<u8>,
}

/// Occurrences of each label as `(crossing, slot)` pairs.
pub(crate) fn slot_map(crossings: &[[u32; 4]]) -> HashMap<u32, Vec<(usize, usize)>> {
    let mut map: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            map.entry(e).or_default().push((c, p));
        }
    }
    map
}

/// Number of faces of the planar 4-valent map described by the crossings.
///
/// A connected diagram with `n` crossings is planar exactly when this is `n + 2`.
/// Every label must occur exactly twice.
pub fn count_faces(crossings: &[[u32; 4]]) -> usize {
    let map = slot_map(crossings);
    let twin = |c: usize, p: usize| -> (usize, usize) {
        let occ = &map[&crossings[c][p]];
        if occ[0] == (c, p) {
            occ[1]
        } else {
            occ[0]
        }
    };
    let n = crossings.len();
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c in 0..n {
        for p in 0..4 {
            if seen[c][p] {
                continue;
            }
            faces += 1;
            let (mut cc, mut pp) = (c, p);
            while !seen[cc][pp] {
                seen[cc][pp] = true;
                let (tc, tp) = twin(cc, pp);
                cc = tc;
                pp = (tp + 3) % 4;
            }
        }
    }
    faces
}

impl KnotDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            over_in: Vec::new(),
        }
    }

    /// Validates raw crossings, derives the orientation and relabels arcs.
    pub fn from_crossings(raw: Vec<[u32; 4]>) -> Result<Self, KnotError> {
        let n = raw.len();
        if n == 0 {
            return Ok(Self::unknot());
        }
        let map = slot_map(&raw);
        for (label, occ) in &map {
            if occ.len() != 2 {
                return Err(KnotError::Validation(format!(
                    "arc {label} appears {} times, expected 2",
                    occ.len()
                )));
            }
        }
        let twin = |c: usize, p: usize| -> (usize, usize) {
            let occ = &map[&raw[c][p]];
            if occ[0] == (c, p) {
                occ[1]
            } else {
                occ[0]
            }
        };

        let mut over_in = vec![0u8; n];
        let mut new_label: HashMap<(usize, usize), u32> = HashMap::new();
        let (mut c, mut p_in) = (0usize, 0usize);
        let mut steps = 0usize;
        loop {
            new_label.insert((c, p_in), steps as u32 + 1);
            let p_out = (p_in + 2) % 4;
            let (nc, np) = twin(c, p_out);
            new_label.insert((c, p_out), (steps as u32 + 1) % (2 * n as u32) + 1);
            steps += 1;
            if np % 2 == 0 {
                if np != 0 {
                    return Err(KnotError::Validation(format!(
                        "under-strand at crossing {} is entered from its outgoing slot",
                        nc + 1
                    )));
                }
            } else if over_in[nc] == 0 {
                over_in[nc] = np as u8;
            } else {
                return Err(KnotError::Validation(format!(
                    "crossing {} visited twice",
                    nc + 1
                )));
            }
            c = nc;
            p_in = np;
            if (c, p_in) == (0, 0) {
                break;
            }
            if steps > 2 * n {
                return Err(KnotError::Validation("traversal does not close".into()));
            }
        }
        if steps != 2 * n {
            return Err(KnotError::Validation(format!(
                "diagram has more than one component ({steps} of {} strands traversed)",
                2 * n
            )));
        }
        let crossings = (0..n)
            .map(|c| std::array::from_fn(|p| new_label[&(c, p)]))
            .collect();
        let d = Self { crossings, over_in };
        if count_faces(&d.crossings) != n + 2 {
            return Err(KnotError::Validation("crossing data is not planar".into()));
        }
        Ok(d)
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    /// Slot (1 or 3) through which the over-strand enters crossing `c`.
    pub fn over_in(&self, c: usize) -> usize {
        self.over_in[c] as usize
    }

    /// Sign of crossing `c`: +1 when the over-strand runs from slot 3 to slot 1.
    pub fn sign(&self, c: usize) -> i64 {
        if self.over_in[c] == 3 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.n_crossings()).map(|c| self.sign(c)).sum()
    }

    /// Diagram of the mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let raw = self
            .crossings
            .iter()
            .zip(&self.over_in)
            .map(|(&[a, b, c, d], &o)| if o == 3 { [d, a, b, c] } else { [b, c, d, a] })
            .collect();
        Self::from_crossings(raw).expect("mirror of a valid diagram is valid")
    }

    /// Canonical text form `PD[X(i,j,k,l),...]`.
    pub fn to_pd_string(&self) -> String {
        let body: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        format!("PD[{}]", body.join(","))
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::parse_pd;

    const TREFOIL: &str = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]";
    const FIGURE_EIGHT: &str = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]";

    #[test]
    fn right_trefoil_writhe() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.mirror().writhe(), -3);
        assert_eq!(d.to_pd_string(), TREFOIL);
    }

    #[test]
    fn mirror_is_an_involution() {
        for s in [TREFOIL, FIGURE_EIGHT] {
            let d = parse_pd(s).unwrap();
            assert_eq!(d.mirror().mirror(), d);
        }
        assert_eq!(parse_pd(FIGURE_EIGHT).unwrap().writhe(), 0);
    }

    #[test]
    fn unknot_diagram() {
        let u = KnotDiagram::unknot();
        assert_eq!(u.writhe(), 0);
        assert_eq!(u.mirror(), u);
    }

    #[test]
    fn invalid_diagrams() {
        let triple = parse_pd("PD[X(1,1,2,1)]");
        assert!(matches!(triple, Err(KnotError::Validation(_))));
        // Two disjoint one-crossing unknots.
        let two = parse_pd("PD[X(1,1,2,2),X(3,3,4,4)]");
        assert!(matches!(two, Err(KnotError::Validation(_))));
        // Under-strand entered through its outgoing slot.
        let bad = parse_pd("PD[X(1,5,2,4),X(1,3,4,6),X(5,3,6,2)]");
        assert!(matches!(bad, Err(KnotError::Validation(_))));
    }

    #[test]
    fn faces_of_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(count_faces(d.crossings()), 5);
    }
}
