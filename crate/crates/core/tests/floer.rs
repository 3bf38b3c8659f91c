mod common;

use ccs_core::algebra::rat;
use ccs_core::floer_rank::{
    ck_thin, hf_rank, slope_pair_constraints, solve_delta_system, RankProfile, ThinComplexModel,
};
use ccs_core::knot_model::{normalize_slope, Slope, SlopePair, SurgeryType};
use ccs_core::skein_engine::{alexander_conway, seifert_matrix};
use num_integer::Integer;
use proptest::prelude::*;

fn s(m: i64, n: i64) -> Slope {
    normalize_slope(m, n).unwrap()
}

fn d_abs_of(delta: &ccs_core::algebra::LaurentPoly) -> Vec<i64> {
    let top = delta.max_exp2().unwrap_or(0) / 2;
    (0..=top)
        .map(|i| i64::try_from(delta.coeff(2 * i)).unwrap().abs())
        .collect()
}

#[test]
fn delta_system_matches_determinant_formula_on_alternating_knots() {
    let mut checked = 0;
    for k in common::knots().into_iter().filter(|k| k.alternating) {
        let v = seifert_matrix(&k.diagram).unwrap();
        let (delta, _) = alexander_conway(&v);
        let det = i64::try_from(v.determinant()).unwrap().abs();
        let tau = k.signature.abs() / 2;
        let model = solve_delta_system(&d_abs_of(&delta), tau)
            .unwrap_or_else(|e| panic!("{}: {e}", k.name));
        assert_eq!(model.c_k(), ck_thin(det, tau).unwrap(), "{}", k.name);
        assert_eq!(model.genus as i64, k.genus, "{}", k.name);
        checked += 1;
    }
    assert_eq!(checked, 196);
}

#[test]
fn six_two_mirror_example() {
    let m = solve_delta_system(&[3, 3, 1], 1).unwrap();
    assert_eq!((m.delta(2), m.delta(1), m.c_k()), (1, 0, 4));
    assert_eq!(ck_thin(11, 1), Ok(4));
}

#[test]
fn rank_is_continuous_at_case_boundary() {
    for nu in 1..=5i64 {
        for c in [0, 2, 4, 6] {
            let g = if c == 0 { nu } else { nu.max(1) + 1 };
            let p = RankProfile::new(nu, 0, c, g).unwrap();
            for n in 1..=10i64 {
                let m = (2 * nu - 1) * n;
                if m.gcd(&n) != 1 {
                    continue;
                }
                let first = m + n * c;
                let second = -m + (4 * nu - 2) * n + n * c;
                assert_eq!(first, second);
                assert_eq!(hf_rank(&p, &s(m, n)), first, "nu={nu} C={c} {m}/{n}");
            }
        }
    }
}

#[test]
fn rank_is_positive() {
    for nu in 0..=5i64 {
        for c in [0, 2, 4, 6] {
            for g in nu.max(1)..=6 {
                let Ok(p) = RankProfile::new(nu, 0, c, g) else {
                    continue;
                };
                for m in 1..=30i64 {
                    for n in -12..=12i64 {
                        if n != 0 && m.gcd(&n) == 1 {
                            assert!(hf_rank(&p, &s(m, n)) >= 1);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn admissible_pairs_satisfy_no_homology_sphere_bound() {
    let mut admitted = 0;
    for nu in 0..=5i64 {
        for c in [0, 2, 4, 6] {
            for g in nu.max(1)..=6 {
                let Ok(p) = RankProfile::new(nu, 0, c, g) else {
                    continue;
                };
                let cons = slope_pair_constraints(&p);
                for m in 1..=40i64 {
                    let ns: Vec<i64> = (-40..=40).filter(|&n| n != 0 && m.gcd(&n) == 1).collect();
                    for (i, &n) in ns.iter().enumerate() {
                        for &n2 in &ns[i + 1..] {
                            let pair = SlopePair::new(s(m, n), s(m, n2));
                            if !cons.admits(&pair) {
                                continue;
                            }
                            admitted += 1;
                            assert!(
                                rat((n + n2).abs(), m) < rat(1, 1),
                                "nu={nu} C={c} g={g} {m}/{n} {m}/{n2}"
                            );
                            if pair.surgery_type != SurgeryType::ZeroType {
                                assert!(m > 2, "nu={nu} C={c} g={g} {m}/{n} {m}/{n2}");
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(admitted > 0);
}

fn model_from_deltas(g: usize, tau: i64, delta: &[i64]) -> Vec<i64> {
    let eps = |i: usize| i64::from(i as i64 <= tau);
    let dl = |j: usize| {
        if (1..=g).contains(&j) {
            delta[j - 1]
        } else {
            0
        }
    };
    let mut d = vec![0; g + 1];
    d[0] = if g == 1 {
        eps(0) + 2 * dl(1)
    } else {
        eps(0) + 2 * dl(1) + 2 * dl(2)
    };
    for (j, dj) in d.iter_mut().enumerate().skip(1) {
        *dj = eps(j) + dl(j) + 2 * dl(j + 1) + dl(j + 2);
    }
    d
}

proptest! {
    #[test]
    fn delta_system_round_trips(g in 1usize..7, tau_seed in 0i64..7, raw in prop::collection::vec(0i64..4, 6)) {
        let tau = tau_seed % (g as i64 + 1);
        let mut delta = raw[..g].to_vec();
        if tau < g as i64 && delta[g - 1] == 0 {
            delta[g - 1] = 1;
        }
        let d = model_from_deltas(g, tau, &delta);
        let model: ThinComplexModel = solve_delta_system(&d, tau).unwrap();
        prop_assert_eq!(&model.delta, &delta);
        let det = d[0] + 2 * d[1..].iter().sum::<i64>();
        prop_assert_eq!(ck_thin(det, tau).unwrap(), model.c_k());
        if g != 1 && tau != g as i64 {
            prop_assert!(model.c_k() >= 4);
        }
    }

    #[test]
    fn sampled_admissible_pairs_stay_bounded(nu in 0i64..6, c in 0i64..4, extra in 0i64..3, m in 1i64..200, n in -200i64..200, n2 in -200i64..200) {
        let c = 2 * c;
        let g = if c == 0 { nu.max(1) } else { nu.max(1) + extra };
        let p = RankProfile::new(nu, 0, c, g);
        prop_assume!(p.is_ok() && n != 0 && n2 != 0 && n != n2 && m.gcd(&n) == 1 && m.gcd(&n2) == 1);
        let pair = SlopePair::new(s(m, n), s(m, n2));
        if slope_pair_constraints(&p.unwrap()).admits(&pair) {
            prop_assert!(rat((n + n2).abs(), m) < rat(1, 1));
        }
    }
}
