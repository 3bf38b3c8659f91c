use std::collections::HashMap;

use super::{SkeinError, SkeinLimits};
use crate::algebra::LaurentPoly2;
use crate::knot_model::KnotDiagram;

/// Memo table for the Kauffman recursion, keyed by canonical diagram codes.
#[derive(Debug, Default)]
pub struct SkeinCache {
    map: HashMap<Vec<u32>, LaurentPoly2>,
    disabled: bool,
    hits: u64,
    misses: u64,
}

impl SkeinCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        Self {
            disabled: true,
            ..Self::default()
        }
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&mut self) {
        self.map.clear();
    }

    fn get(&mut self, key: &[u32]) -> Option<LaurentPoly2> {
        if self.disabled {
            return None;
        }
        let v = self.map.get(key).cloned();
        if v.is_some() {
            self.hits += 1;
        } else {
            self.misses += 1;
        }
        v
    }

    fn insert(&mut self, key: Vec<u32>, value: LaurentPoly2) {
        if !self.disabled {
            self.map.insert(key, value);
        }
    }
}

/// Kauffman polynomial `F(a, z)` with `F(unknot) = 1`.
///
/// The regular-isotopy polynomial `L` satisfies `L(D+) + L(D-) = z (L(D0) + L(Dinf))`,
/// a positive curl multiplies `L` by `a`, and `F = a^{-writhe} L`.
pub fn kauffman_polynomial(
    d: &KnotDiagram,
    cache: &mut SkeinCache,
    limits: &SkeinLimits,
) -> Result<LaurentPoly2, SkeinError> {
    if d.n_crossings() > limits.max_kauffman_crossings {
        return Err(SkeinError::ResourceLimit {
            what: "Kauffman crossings",
            limit: limits.max_kauffman_crossings as u64,
        });
    }
    if d.n_crossings() == 0 {
        return Ok(LaurentPoly2::one());
    }
    let mut engine = Engine {
        cache,
        limits: *limits,
        nodes: 0,
        delta_pows: vec![LaurentPoly2::one()],
    };
    let l = engine.link_poly(d.crossings().to_vec(), 0)?;
    Ok(l.shift(-d.writhe() as i32, 0))
}

/// Dubrovnik polynomial `D(a, z) = F(ia, -iz)` of a knot.
pub fn dubrovnik(
    d: &KnotDiagram,
    cache: &mut SkeinCache,
    limits: &SkeinLimits,
) -> Result<LaurentPoly2, SkeinError> {
    dubrovnik_from_kauffman(&kauffman_polynomial(d, cache, limits)?)
}

/// Applies `a -> ia`, `z -> -iz` to a knot's Kauffman polynomial.
pub fn dubrovnik_from_kauffman(f: &LaurentPoly2) -> Result<LaurentPoly2, SkeinError> {
    let mut out = LaurentPoly2::zero();
    for ((a, z), c) in f.terms() {
        if (a + z).rem_euclid(2) != 0 {
            return Err(SkeinError::Malformed(format!(
                "term a^{a} z^{z} has odd total degree"
            )));
        }
        // i^a (-i)^z = (-1)^z i^{a+z}
        let neg = (z.rem_euclid(2) == 1) ^ (((a + z) / 2).rem_euclid(2) == 1);
        out.add_term(a, z, if neg { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

type Crossing = [u32; 4];

fn slot_map(cr: &[Crossing]) -> HashMap<u32, [(usize, usize); 2]> {
    let mut m: HashMap<u32, [(usize, usize); 2]> = HashMap::with_capacity(cr.len() * 2);
    for (c, x) in cr.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            m.entry(e)
                .and_modify(|s| s[1] = (c, p))
                .or_insert([(c, p), (usize::MAX, 0)]);
        }
    }
    m
}

fn twin(
    m: &HashMap<u32, [(usize, usize); 2]>,
    cr: &[Crossing],
    c: usize,
    p: usize,
) -> (usize, usize) {
    let s = m[&cr[c][p]];
    if s[0] == (c, p) {
        s[1]
    } else {
        s[0]
    }
}

/// Removes the listed crossings and splices the given label pairs together.
/// Returns the number of closed loops created.
fn remove_and_join(cr: &mut Vec<Crossing>, remove: &[usize], joins: &[(u32, u32)]) -> u32 {
    let mut idx = remove.to_vec();
    idx.sort_unstable_by(|a, b| b.cmp(a));
    for i in idx {
        cr.swap_remove(i);
    }
    let mut pending = joins.to_vec();
    let mut loops = 0;
    for k in 0..pending.len() {
        let (a, b) = pending[k];
        if a == b {
            loops += 1;
            continue;
        }
        for x in cr.iter_mut() {
            for e in x.iter_mut() {
                if *e == b {
                    *e = a;
                }
            }
        }
        for (u, v) in pending.iter_mut().skip(k + 1) {
            if *u == b {
                *u = a;
            }
            if *v == b {
                *v = a;
            }
        }
    }
    loops
}

/// Applies Reidemeister I and II reductions. Returns `(loops created, power of a)`.
fn simplify(cr: &mut Vec<Crossing>) -> (u32, i32) {
    let mut loops = 0;
    let mut a_pow = 0;
    'outer: loop {
        for i in 0..cr.len() {
            let x = cr[i];
            let (join, f) = if x[0] == x[1] {
                ((x[2], x[3]), 1)
            } else if x[1] == x[2] {
                ((x[0], x[3]), -1)
            } else if x[2] == x[3] {
                ((x[0], x[1]), 1)
            } else if x[3] == x[0] {
                ((x[1], x[2]), -1)
            } else {
                continue;
            };
            loops += remove_and_join(cr, &[i], &[join]);
            a_pow += f;
            continue 'outer;
        }
        if let Some((c1, p, c2, q)) = find_bigon(cr) {
            let a1 = cr[c1][(p + 2) % 4];
            let a2 = cr[c2][(q + 2) % 4];
            let b1 = cr[c1][(p + 3) % 4];
            let b2 = cr[c2][(q + 1) % 4];
            loops += remove_and_join(cr, &[c1, c2], &[(a1, a2), (b1, b2)]);
            continue;
        }
        break;
    }
    (loops, a_pow)
}

/// Finds a bigon face whose boundary strand `x` is over at both corners.
/// Returns `(c1, p, c2, q)` with `x` at slot `p` of `c1` and slot `q` of `c2`.
fn find_bigon(cr: &[Crossing]) -> Option<(usize, usize, usize, usize)> {
    let m = slot_map(cr);
    for c1 in 0..cr.len() {
        for p in [1, 3] {
            let (c2, q) = twin(&m, cr, c1, p);
            if c2 == c1 || q % 2 == 0 {
                continue;
            }
            let back = twin(&m, cr, c2, (q + 3) % 4);
            if back == (c1, (p + 1) % 4) {
                return Some((c1, p, c2, q));
            }
        }
    }
    None
}

fn split_pieces(cr: Vec<Crossing>) -> Vec<Vec<Crossing>> {
    let n = cr.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let m = slot_map(&cr);
    for s in m.values() {
        if s[1].0 != usize::MAX {
            let (a, b) = (find(&mut parent, s[0].0), find(&mut parent, s[1].0));
            parent[a] = b;
        }
    }
    let mut groups: HashMap<usize, Vec<Crossing>> = HashMap::new();
    let mut order = Vec::new();
    for (i, x) in cr.into_iter().enumerate() {
        let r = find(&mut parent, i);
        if !groups.contains_key(&r) {
            order.push(r);
        }
        groups.entry(r).or_default().push(x);
    }
    order
        .into_iter()
        .map(|r| groups.remove(&r).expect("group"))
        .collect()
}

/// Canonical code of a connected diagram up to relabelling, reordering and
/// the half-turn symmetry of each crossing.
fn canonical_key(cr: &[Crossing]) -> Vec<u32> {
    let m = slot_map(cr);
    let n = cr.len();
    let mut best: Option<Vec<u32>> = None;
    let mut offset = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    let mut labels: HashMap<u32, u32> = HashMap::with_capacity(2 * n);
    for start in 0..n {
        for off0 in [0, 2] {
            offset.iter_mut().for_each(|o| *o = usize::MAX);
            queue.clear();
            labels.clear();
            offset[start] = off0;
            queue.push(start);
            let mut code = Vec::with_capacity(4 * n);
            let mut head = 0;
            let mut worse = false;
            let mut decided_better = false;
            while head < queue.len() {
                let c = queue[head];
                head += 1;
                for k in 0..4 {
                    let p = (offset[c] + k) % 4;
                    let next = labels.len() as u32 + 1;
                    let l = *labels.entry(cr[c][p]).or_insert(next);
                    if !decided_better {
                        if let Some(b) = &best {
                            let i = code.len();
                            if l > b[i] {
                                worse = true;
                                break;
                            }
                            if l < b[i] {
                                decided_better = true;
                            }
                        }
                    }
                    code.push(l);
                    let (c2, p2) = twin(&m, cr, c, p);
                    if offset[c2] == usize::MAX {
                        offset[c2] = p2 & 2;
                        queue.push(c2);
                    }
                }
                if worse {
                    break;
                }
            }
            if !worse && (decided_better || best.is_none()) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

struct Engine<'a> {
    cache: &'a mut SkeinCache,
    limits: SkeinLimits,
    nodes: u64,
    delta_pows: Vec<LaurentPoly2>,
}

impl Engine<'_> {
    fn delta_pow(&mut self, k: usize) -> LaurentPoly2 {
        // delta = (a + a^{-1}) z^{-1} - 1
        let delta = LaurentPoly2::from_terms(&[(1, 1, -1), (1, -1, -1), (-1, 0, 0)]);
        while self.delta_pows.len() <= k {
            let next = self.delta_pows.last().expect("non-empty") * &delta;
            self.delta_pows.push(next);
        }
        self.delta_pows[k].clone()
    }

    /// `L` of a possibly split, multi-component diagram with `loops` extra free loops.
    fn link_poly(&mut self, mut cr: Vec<Crossing>, loops: u32) -> Result<LaurentPoly2, SkeinError> {
        let (more, a_pow) = simplify(&mut cr);
        let loops = (loops + more) as usize;
        let pieces = split_pieces(cr);
        let count = loops + pieces.len();
        let mut acc = self.delta_pow(count.saturating_sub(1)).shift(a_pow, 0);
        for piece in pieces {
            let v = self.connected(piece)?;
            acc = &acc * &v;
        }
        Ok(acc)
    }

    fn connected(&mut self, cr: Vec<Crossing>) -> Result<LaurentPoly2, SkeinError> {
        let key = canonical_key(&cr);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        if self.nodes > self.limits.max_recursion_nodes {
            return Err(SkeinError::ResourceLimit {
                what: "Kauffman recursion nodes",
                limit: self.limits.max_recursion_nodes,
            });
        }
        let plan = descending_plan(&cr);
        let z = LaurentPoly2::monomial(1, 0, 1);
        let mut result = LaurentPoly2::zero();
        let mut cur = cr.clone();
        let mut negative = false;
        for &b in &plan.bad {
            let x = cur[b];
            let mut s0 = cur.clone();
            let l0 = remove_and_join(&mut s0, &[b], &[(x[0], x[1]), (x[2], x[3])]);
            let mut s1 = cur.clone();
            let l1 = remove_and_join(&mut s1, &[b], &[(x[0], x[3]), (x[1], x[2])]);
            let sum = &self.link_poly(s0, l0)? + &self.link_poly(s1, l1)?;
            let term = &z * &sum;
            if negative {
                result -= &term;
            } else {
                result += &term;
            }
            cur[b] = [x[1], x[2], x[3], x[0]];
            negative = !negative;
        }
        let base = self
            .delta_pow(plan.components - 1)
            .shift(plan.final_writhe as i32, 0);
        if negative {
            result -= &base;
        } else {
            result += &base;
        }
        self.cache.insert(key, result.clone());
        Ok(result)
    }
}

/// Crossings to switch to make a diagram descending, and the self-writhe afterwards.
struct DescendingPlan {
    bad: Vec<usize>,
    components: usize,
    final_writhe: i64,
}

fn descending_plan(cr: &[Crossing]) -> DescendingPlan {
    let m = slot_map(cr);
    let n = cr.len();
    // Components as cyclic lists of (crossing, entry slot).
    let mut used = vec![[false; 4]; n];
    let mut comps: Vec<Vec<(usize, usize)>> = Vec::new();
    for c0 in 0..n {
        for p0 in 0..4 {
            if used[c0][p0] {
                continue;
            }
            let mut comp = Vec::new();
            let (mut c, mut p) = (c0, p0);
            while !used[c][p] {
                used[c][p] = true;
                used[c][(p + 2) % 4] = true;
                comp.push((c, p));
                let (c2, p2) = twin(&m, cr, c, (p + 2) % 4);
                c = c2;
                p = p2;
            }
            comps.push(comp);
        }
    }
    // Strand owner per crossing: [under component, over component].
    let mut owner = vec![[0usize; 2]; n];
    for (k, comp) in comps.iter().enumerate() {
        for &(c, p) in comp {
            owner[c][p % 2] = k;
        }
    }
    // Best base point and direction per component: fewest self crossings first met from below.
    let mut routes: Vec<Vec<(usize, usize)>> = Vec::with_capacity(comps.len());
    for (k, comp) in comps.iter().enumerate() {
        let len = comp.len();
        let reversed: Vec<(usize, usize)> =
            comp.iter().rev().map(|&(c, p)| (c, (p + 2) % 4)).collect();
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for dir in [comp, &reversed] {
            for s in 0..len {
                let route: Vec<(usize, usize)> = (0..len).map(|i| dir[(s + i) % len]).collect();
                let mut seen = vec![false; n];
                let mut bad = 0;
                for &(c, p) in &route {
                    if owner[c][0] != k || owner[c][1] != k {
                        continue;
                    }
                    if !seen[c] {
                        seen[c] = true;
                        if p % 2 == 0 {
                            bad += 1;
                        }
                    }
                }
                if best.as_ref().is_none_or(|(b, _)| bad < *b) {
                    best = Some((bad, route));
                }
            }
        }
        routes.push(best.expect("non-empty component").1);
    }
    // Stacking order of components: earlier components lie above later ones.
    let k = comps.len();
    let mut under_count = vec![vec![0usize; k]; k];
    for c in 0..n {
        let [u, o] = owner[c];
        if u != o {
            under_count[u][o] += 1;
        }
    }
    let rank = stacking_order(&under_count);

    let mut bad = Vec::new();
    let mut writhe = 0i64;
    let mut seen = vec![false; n];
    let mut in_slot = vec![[0usize; 2]; n];
    for route in &routes {
        for &(c, p) in route {
            in_slot[c][p % 2] = p;
        }
    }
    for (ci, route) in routes.iter().enumerate() {
        for &(c, p) in route {
            let [u, o] = owner[c];
            if u == o {
                if seen[c] {
                    continue;
                }
                seen[c] = true;
                let sign = if in_slot[c][1] == (in_slot[c][0] + 3) % 4 {
                    1
                } else {
                    -1
                };
                if p % 2 == 0 {
                    bad.push(c);
                    writhe -= sign;
                } else {
                    writhe += sign;
                }
            } else if p % 2 == 0 && u == ci && rank[u] < rank[o] {
                bad.push(c);
            }
        }
    }
    DescendingPlan {
        bad,
        components: k,
        final_writhe: writhe,
    }
}

/// Orders components to minimise crossings where a higher component passes under a lower one.
/// `under[i][j]` counts crossings with `i` under `j`. Returns the rank of each component.
fn stacking_order(under: &[Vec<usize>]) -> Vec<usize> {
    let k = under.len();
    let cost = |perm: &[usize]| -> usize {
        let mut total = 0;
        for (a, &i) in perm.iter().enumerate() {
            for &j in &perm[a + 1..] {
                total += under[i][j];
            }
        }
        total
    };
    let mut perm: Vec<usize> = (0..k).collect();
    if k <= 7 {
        let mut best = perm.clone();
        let mut best_cost = cost(&perm);
        while next_permutation(&mut perm) {
            let c = cost(&perm);
            if c < best_cost {
                best_cost = c;
                best = perm.clone();
            }
        }
        perm = best;
    }
    let mut rank = vec![0; k];
    for (r, &i) in perm.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::parse_pd;

    #[test]
    fn unknot_and_curl() {
        let lim = SkeinLimits::default();
        let mut cache = SkeinCache::new();
        let u = KnotDiagram::unknot();
        assert_eq!(
            kauffman_polynomial(&u, &mut cache, &lim).unwrap(),
            LaurentPoly2::one()
        );
        let curl = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(
            kauffman_polynomial(&curl, &mut cache, &lim).unwrap(),
            LaurentPoly2::one()
        );
    }

    #[test]
    fn canonical_key_ignores_labels_and_order() {
        let a = vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
        assert_eq!(canonical_key(&a), canonical_key(&relabel(&a)));
        let mirror = vec![[4, 1, 5, 2], [6, 3, 1, 4], [2, 5, 3, 6]];
        assert_ne!(canonical_key(&a), canonical_key(&mirror));
    }

    fn relabel(cr: &[Crossing]) -> Vec<Crossing> {
        let mut out: Vec<Crossing> = cr
            .iter()
            .rev()
            .map(|x| [x[2] * 7, x[3] * 7, x[0] * 7, x[1] * 7])
            .collect();
        out.rotate_left(1);
        out
    }
}
