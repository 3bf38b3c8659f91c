use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::SkeinError;
use crate::algebra::{bareiss_determinant, matrix_signature, LaurentPoly, Rational, SymIntMatrix};
use crate::knot_model::KnotDiagram;

/// Seifert matrix of a Seifert surface, of size `2 * genus_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Accepts square matrices of even size.
    pub fn new(entries: Vec<Vec<i64>>) -> Option<Self> {
        let n = entries.len();
        if !n.is_multiple_of(2) || entries.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { entries })
    }

    pub fn genus_bound(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `V + V^T`.
    pub fn symmetrized(&self) -> SymIntMatrix {
        let n = self.dim();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i][j] + self.entries[j][i])
                    .collect()
            })
            .collect();
        SymIntMatrix::new(m).expect("symmetric by construction")
    }

    /// Knot signature `sigma(V + V^T)`.
    pub fn signature(&self) -> i64 {
        matrix_signature(&self.symmetrized()).signature()
    }

    /// `|det(V + V^T)|`.
    pub fn determinant(&self) -> BigInt {
        let m: Vec<Vec<BigInt>> = self
            .symmetrized()
            .entries()
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        bareiss_determinant(&m).abs()
    }
}

fn is_incoming(d: &KnotDiagram, c: usize, p: usize) -> bool {
    p == 0 || p == d.over_in(c)
}

/// Outgoing slot joined to incoming slot `p` by the oriented smoothing.
fn smooth_next(d: &KnotDiagram, c: usize, p: usize) -> usize {
    if is_incoming(d, c, (p + 1) % 4) {
        (p + 3) % 4
    } else {
        (p + 1) % 4
    }
}

struct Ends {
    /// Per label: (crossing, slot) of the arc's tail and head.
    tail: HashMap<u32, (usize, usize)>,
    head: HashMap<u32, (usize, usize)>,
}

fn arc_ends(d: &KnotDiagram) -> Ends {
    let mut tail = HashMap::new();
    let mut head = HashMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            if is_incoming(d, c, p) {
                head.insert(e, (c, p));
            } else {
                tail.insert(e, (c, p));
            }
        }
    }
    Ends { tail, head }
}

/// Seifert circles as lists of arc labels in the direction of travel.
pub fn seifert_circles(d: &KnotDiagram) -> Vec<Vec<u32>> {
    if d.n_crossings() == 0 {
        return vec![Vec::new()];
    }
    let ends = arc_ends(d);
    let mut labels: Vec<u32> = ends.head.keys().copied().collect();
    labels.sort_unstable();
    let mut seen = BTreeSet::new();
    let mut circles = Vec::new();
    for start in labels {
        if seen.contains(&start) {
            continue;
        }
        let mut circle = Vec::new();
        let mut e = start;
        while seen.insert(e) {
            circle.push(e);
            let (c, p) = ends.head[&e];
            e = d.crossings()[c][smooth_next(d, c, p)];
        }
        circles.push(circle);
    }
    circles
}

fn circle_index(circles: &[Vec<u32>]) -> HashMap<u32, usize> {
    let mut m = HashMap::new();
    for (i, c) in circles.iter().enumerate() {
        for &e in c {
            m.insert(e, i);
        }
    }
    m
}

/// Faces as cyclic lists of darts `(crossing, slot)`, each traversed with the face on its left.
fn faces(d: &KnotDiagram) -> Vec<Vec<(usize, usize)>> {
    let cr = d.crossings();
    let mut pos: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in cr.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            pos.entry(e).or_default().push((c, p));
        }
    }
    let twin = |c: usize, p: usize| {
        let o = &pos[&cr[c][p]];
        if o[0] == (c, p) {
            o[1]
        } else {
            o[0]
        }
    };
    let mut used = vec![[false; 4]; cr.len()];
    let mut out = Vec::new();
    for c0 in 0..cr.len() {
        for p0 in 0..4 {
            if used[c0][p0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut c, mut p) = (c0, p0);
            while !used[c][p] {
                used[c][p] = true;
                face.push((c, p));
                let (c2, p2) = twin(c, p);
                c = c2;
                p = (p2 + 3) % 4;
            }
            out.push(face);
        }
    }
    out
}

/// One Vogel move if the diagram has two incoherent Seifert circles sharing a face.
fn vogel_step(d: &KnotDiagram) -> Result<Option<KnotDiagram>, SkeinError> {
    let circles = seifert_circles(d);
    let circ = circle_index(&circles);
    let ends = arc_ends(d);
    let cr = d.crossings();
    for face in faces(d) {
        // +1 when the arc runs along the face boundary direction.
        let darts: Vec<(u32, i32)> = face
            .iter()
            .map(|&(c, p)| {
                let e = cr[c][p];
                (e, if ends.tail[&e] == (c, p) { 1 } else { -1 })
            })
            .collect();
        for i in 0..darts.len() {
            for j in i + 1..darts.len() {
                let ((a, sa), (b, sb)) = (darts[i], darts[j]);
                if sa != sb || circ[&a] == circ[&b] {
                    continue;
                }
                return vogel_move(d, &ends, a, b, sa).map(Some);
            }
        }
    }
    Ok(None)
}

/// Pushes arc `a` across a shared face and over arc `b`.
fn vogel_move(
    d: &KnotDiagram,
    ends: &Ends,
    a: u32,
    b: u32,
    side: i32,
) -> Result<KnotDiagram, SkeinError> {
    let mut cr: Vec<[u32; 4]> = d.crossings().to_vec();
    let top = cr.iter().flatten().copied().max().unwrap_or(0);
    let (a1, a2, a3) = (a, top + 1, top + 2);
    let (b1, b2, b3) = (b, top + 3, top + 4);
    let (hc, hp) = ends.head[&a];
    cr[hc][hp] = a3;
    let (hc, hp) = ends.head[&b];
    cr[hc][hp] = b3;
    if side > 0 {
        cr.push([b2, a2, b3, a1]);
        cr.push([b1, a2, b2, a3]);
    } else {
        cr.push([b1, a3, b2, a2]);
        cr.push([b2, a1, b3, a2]);
    }
    KnotDiagram::from_crossings(cr)
        .map_err(|e| SkeinError::Malformed(format!("Vogel move failed: {e}")))
}

/// Braid word (signed 1-based generator indices) whose closure is the knot of `d`.
pub fn braid_word(d: &KnotDiagram) -> Result<Vec<i64>, SkeinError> {
    let mut cur = d.clone();
    let cap = 4 * d.n_crossings() + 8;
    let mut moves = 0;
    while let Some(next) = vogel_step(&cur)? {
        cur = next;
        moves += 1;
        if moves > cap {
            return Err(SkeinError::ResourceLimit {
                what: "Vogel moves",
                limit: cap as u64,
            });
        }
    }
    read_braid(&cur)
}

fn read_braid(d: &KnotDiagram) -> Result<Vec<i64>, SkeinError> {
    let n = d.n_crossings();
    if n == 0 {
        return Ok(Vec::new());
    }
    let circles = seifert_circles(d);
    let circ = circle_index(&circles);
    let ends = arc_ends(d);
    let cr = d.crossings();
    let s = circles.len();
    // The two circles at each crossing.
    let touch: Vec<[usize; 2]> = (0..n)
        .map(|c| [circ[&cr[c][0]], circ[&cr[c][d.over_in(c)]]])
        .collect();
    let mut nbrs = vec![BTreeSet::new(); s];
    for &[x, y] in &touch {
        if x == y {
            return Err(SkeinError::Malformed(
                "crossing joins a Seifert circle to itself".into(),
            ));
        }
        nbrs[x].insert(y);
        nbrs[y].insert(x);
    }
    let first = (0..s)
        .find(|&i| nbrs[i].len() == 1)
        .ok_or_else(not_braided)?;
    let mut level = vec![usize::MAX; s];
    let mut order = vec![first];
    level[first] = 0;
    while order.len() < s {
        let last = *order.last().expect("non-empty");
        let next = nbrs[last]
            .iter()
            .copied()
            .find(|&j| level[j] == usize::MAX)
            .ok_or_else(not_braided)?;
        level[next] = order.len();
        order.push(next);
    }
    if touch.iter().any(|&[x, y]| level[x].abs_diff(level[y]) != 1) {
        return Err(not_braided());
    }
    let gen = |c: usize| level[touch[c][0]].min(level[touch[c][1]]);
    // Crossings met along each circle, in travel order.
    let seq: Vec<Vec<usize>> = circles
        .iter()
        .map(|circle| circle.iter().map(|e| ends.head[e].0).collect())
        .collect();
    // Cut each circle along a ray from the innermost level outward.
    let mut lin: Vec<Vec<usize>> = vec![Vec::new(); s];
    let mut cut_before: Option<usize> = None;
    for k in 0..s {
        let sq = &seq[order[k]];
        let start = match cut_before {
            None => 0,
            Some(x) => sq.iter().position(|&c| c == x).ok_or_else(not_braided)?,
        };
        let l: Vec<usize> = (0..sq.len()).map(|i| sq[(start + i) % sq.len()]).collect();
        cut_before = l.iter().copied().find(|&c| gen(c) == k);
        lin[k] = l;
    }
    // Merge the per-circle orders.
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for l in &lin {
        for w in l.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut ready: BTreeSet<(usize, usize)> = (0..n)
        .filter(|&c| indeg[c] == 0)
        .map(|c| (gen(c), c))
        .collect();
    let mut word = Vec::with_capacity(n);
    while let Some(&(g, c)) = ready.iter().next() {
        ready.remove(&(g, c));
        word.push(d.sign(c) * (g as i64 + 1));
        for &t in &succ[c] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert((gen(t), t));
            }
        }
    }
    if word.len() != n {
        return Err(not_braided());
    }
    Ok(word)
}

fn not_braided() -> SkeinError {
    SkeinError::Malformed("diagram is not a closed braid".into())
}

/// Seifert matrix of the surface obtained from Seifert's algorithm on a braided form of `d`.
pub fn seifert_matrix(d: &KnotDiagram) -> Result<SeifertMatrix, SkeinError> {
    let x = braid_word(d)?;
    Ok(SeifertMatrix::new(braid_seifert_matrix(&x)).expect("even size for a knot"))
}

/// Seifert matrix of the closure of a braid word with consecutive generator indices.
pub fn braid_seifert_matrix(x: &[i64]) -> Vec<Vec<i64>> {
    let len = x.len();
    let h: Vec<usize> = (0..len)
        .map(|j| {
            (j + 1..len)
                .find(|&i| x[i].abs() == x[j].abs())
                .unwrap_or(0)
        })
        .collect();
    let idx: Vec<usize> = (0..len).filter(|&i| h[i] != 0).collect();
    let m = idx.len();
    let mut a = vec![vec![0i64; m]; m];
    for (ni, &i) in idx.iter().enumerate() {
        let hi = h[i];
        a[ni][ni] = -(x[i].signum() + x[hi].signum()).signum();
        for (nj, &j) in idx.iter().enumerate().skip(ni + 1) {
            if hi > h[j] || hi < j {
                continue;
            }
            if hi == j {
                if x[j] > 0 {
                    a[nj][ni] = 1;
                } else {
                    a[ni][nj] = -1;
                }
            } else if x[i].abs() - x[j].abs() == 1 {
                a[nj][ni] = -1;
            } else if x[j].abs() - x[i].abs() == 1 {
                a[ni][nj] = 1;
            }
        }
    }
    a
}

/// Alexander polynomial (symmetric, `Δ(1) = 1`) and Conway polynomial of a Seifert matrix.
pub fn alexander_conway(v: &SeifertMatrix) -> (LaurentPoly, LaurentPoly) {
    let m = v.dim();
    // det(V - t V^T) sampled at t = 0..=m, then interpolated.
    let samples: Vec<BigInt> = (0..=m as i64)
        .map(|t| {
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| BigInt::from(v.entries[i][j] - t * v.entries[j][i]))
                        .collect()
                })
                .collect();
            bareiss_determinant(&rows)
        })
        .collect();
    let coeffs = interpolate(&samples);
    let mut p = LaurentPoly::zero();
    for (k, c) in coeffs.into_iter().enumerate() {
        p.add_term(2 * k as i64, c);
    }
    let delta = normalize_alexander(&p);
    let conway = conway_from_alexander(&delta);
    (delta, conway)
}

/// Shifts and signs a knot's Alexander polynomial into symmetric form with `Δ(1) = 1`.
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    let (Some(lo), Some(hi)) = (p.min_exp2(), p.max_exp2()) else {
        return LaurentPoly::zero();
    };
    let shifted = p.shift(-(lo + hi) / 2);
    let at_one: BigInt = shifted.terms().map(|(_, c)| c.clone()).sum();
    if at_one.is_negative() {
        -shifted
    } else {
        shifted
    }
}

/// Rewrites a symmetric Alexander polynomial in `z = t^{1/2} - t^{-1/2}`.
pub fn conway_from_alexander(delta: &LaurentPoly) -> LaurentPoly {
    // t^i + t^{-i} as a polynomial in s = t + t^{-1} = z^2 + 2.
    let top = delta.max_exp2().unwrap_or(0) / 2;
    let s = LaurentPoly::from_int_terms(&[(2, 1), (0, 2)]);
    let mut p_prev = LaurentPoly::constant(2);
    let mut p_cur = s.clone();
    let mut out = LaurentPoly::constant(delta.coeff(0));
    for i in 1..=top {
        if i > 1 {
            let next = &(&s * &p_cur) - &p_prev;
            p_prev = std::mem::replace(&mut p_cur, next);
        }
        out = &out + &p_cur.scale(&delta.coeff(2 * i));
    }
    out
}

/// Coefficients of the polynomial taking `samples[k]` at `t = k`.
fn interpolate(samples: &[BigInt]) -> Vec<BigInt> {
    let n = samples.len();
    let mut out = vec![Rational::zero(); n];
    for (k, yk) in samples.iter().enumerate() {
        // Lagrange basis polynomial for node k.
        let mut basis = vec![Rational::from_integer(BigInt::from(1))];
        let mut denom = BigInt::from(1);
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * Rational::from_integer(BigInt::from(j));
            }
            basis = next;
            denom *= BigInt::from(k as i64 - j as i64);
        }
        let f = Rational::new(yk.clone(), denom);
        for (i, b) in basis.iter().enumerate() {
            out[i] += b * &f;
        }
    }
    out.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "integer determinant polynomial");
            c.to_integer()
        })
        .collect()
}
