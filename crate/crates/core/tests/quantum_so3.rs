mod common;

use ccs_core::algebra::{rat, CyclotomicElement};
use ccs_core::knot_model::{normalize_slope, Slope};
use ccs_core::quantum_so3::{
    c_plus_minus, coefficient_vector, coefficient_vector_for, continued_fraction, detecting_slopes,
    jones_at_root, lens_space_tau, obstructed_slopes, quantum_integer, tau_so3_surgery,
    zero_type_obstruction, zero_type_obstruction_general, ChainMethod, ColoredJonesVector,
    ContinuedFraction, ZeroTypeVerdict,
};
use ccs_core::skein_engine::{jones, SkeinLimits};

fn s(m: i64, n: i64) -> Slope {
    normalize_slope(m, n).unwrap()
}

/// Numerical value of a cyclotomic element, for sign checks only.
fn approx(x: &CyclotomicElement) -> (f64, f64) {
    let l = x.level() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in x.coeffs().iter().enumerate() {
        let c: f64 = c.numer().to_string().parse::<f64>().unwrap()
            / c.denom().to_string().parse::<f64>().unwrap();
        let th = 2.0 * std::f64::consts::PI * k as f64 / l;
        re += c * th.cos();
        im += c * th.sin();
    }
    (re, im)
}

#[test]
fn quantum_integers() {
    assert!(quantum_integer(1, 5).is_one());
    assert!(quantum_integer(5, 5).is_zero());
    assert!(quantum_integer(7, 7).is_zero());
    let two = quantum_integer(2, 5);
    let golden = &(&(&two * &two) - &two) - &CyclotomicElement::one(10);
    assert!(golden.is_zero());
    assert_eq!(quantum_integer(-3, 7), -quantum_integer(3, 7));
}

#[test]
fn continued_fractions() {
    assert_eq!(continued_fraction(&s(7, 2)).terms(), &[4, 2]);
    assert_eq!(continued_fraction(&s(9, 1)).terms(), &[9]);
    let neg = continued_fraction(&s(7, -2));
    assert_eq!(neg.evaluate(), Some(rat(-7, 2)));
    for m in 1..40 {
        for n in -15..=15i64 {
            if n == 0 || num_integer::gcd(m, n) != 1 {
                continue;
            }
            let cf = continued_fraction(&s(m, n));
            assert_eq!(cf.evaluate(), Some(rat(m, n)), "{m}/{n}");
            assert!(cf.terms()[1..].iter().all(|&a| a >= 2));
        }
    }
}

#[test]
fn constants() {
    let (p, m) = c_plus_minus(5).unwrap();
    assert_eq!(p.conj(), m);
    let norm = &p * &m;
    assert!(norm.is_real());
    let (re, im) = approx(&norm);
    assert!(re > 0.0 && im.abs() < 1e-9);
    let (p3, m3) = c_plus_minus(3).unwrap();
    assert!(p3.is_one() && m3.is_one());
    assert!(c_plus_minus(4).is_err());
}

#[test]
fn coefficient_conjugation_symmetry() {
    for r in [5, 7] {
        for sl in [s(1, 1), s(2, 1), s(3, 1), s(7, 2), s(5, 3)] {
            let v = coefficient_vector(r, &sl).unwrap();
            let w = coefficient_vector(r, &sl.negated()).unwrap();
            assert_eq!(v, w.conj(), "r={r} slope {sl}");
        }
    }
}

#[test]
fn brute_force_matches_transfer_matrix() {
    let cfs = [
        vec![3],
        vec![4, 2],
        vec![-3, 2, 5],
        vec![2, -1, 3, 2],
        vec![1, 2, 2, 3, -2],
    ];
    for r in [5, 7] {
        for terms in &cfs {
            let cf = ContinuedFraction::new(terms.clone()).unwrap();
            if cf.evaluate().is_none_or(|v| v == rat(0, 1)) {
                continue;
            }
            assert_eq!(
                coefficient_vector_for(r, &cf, ChainMethod::BruteForce).unwrap(),
                coefficient_vector_for(r, &cf, ChainMethod::TransferMatrix).unwrap(),
                "r={r} {terms:?}"
            );
        }
    }
}

#[test]
fn sphere_and_lens_spaces() {
    for r in [5, 7] {
        assert!(lens_space_tau(r, &s(1, 1)).unwrap().is_one());
        assert!(lens_space_tau(r, &s(1, -1)).unwrap().is_one());
        let unknot = ColoredJonesVector::unknot(r).unwrap();
        for (sl, alt) in [(s(7, 2), vec![3, -2]), (s(5, 3), vec![1, -1, 2])] {
            let cf = ContinuedFraction::new(alt).unwrap();
            assert_eq!(cf.evaluate(), Some(sl.value()));
            let v = coefficient_vector_for(r, &cf, ChainMethod::TransferMatrix).unwrap();
            let direct: CyclotomicElement = unknot
                .entries
                .iter()
                .zip(&v.entries)
                .fold(CyclotomicElement::zero(2 * r), |acc, (a, b)| {
                    &acc + &(a * b)
                });
            assert_eq!(direct, lens_space_tau(r, &sl).unwrap(), "r={r} slope {sl}");
        }
    }
}

#[test]
fn unknot_from_jones_is_unknot_vector() {
    let u = ColoredJonesVector::from_jones(5, &ccs_core::algebra::LaurentPoly::one()).unwrap();
    assert_eq!(u, ColoredJonesVector::unknot(5).unwrap());
    assert!(ColoredJonesVector::from_jones(7, &ccs_core::algebra::LaurentPoly::one()).is_err());
}

#[test]
fn trefoil_surgeries() {
    let knots = common::knots();
    let lim = SkeinLimits::default();
    let tref = &knots.iter().find(|k| k.name == "3_1").unwrap().diagram;
    let v = jones(tref, &lim).unwrap();
    let vm = jones(&tref.mirror(), &lim).unwrap();
    assert!(!jones_at_root(&v, 5).is_real());
    let colors = ColoredJonesVector::from_jones(5, &v).unwrap();
    let colors_m = ColoredJonesVector::from_jones(5, &vm).unwrap();
    let mut obstructed = 0;
    for sl in [
        s(1, 1),
        s(2, 1),
        s(3, 1),
        s(5, 1),
        s(7, 2),
        s(5, 3),
        s(9, 2),
    ] {
        let t = tau_so3_surgery(5, &colors, &sl).unwrap();
        let tm = tau_so3_surgery(5, &colors_m, &sl).unwrap();
        assert_eq!(
            tm,
            tau_so3_surgery(5, &colors, &sl.negated()).unwrap().conj(),
            "slope {sl}"
        );
        assert!((&t * &t.conj()).is_real());
        let verdict = zero_type_obstruction(5, &v, &sl).unwrap();
        assert_eq!(
            verdict,
            zero_type_obstruction_general(&colors, &sl).unwrap()
        );
        let c2 = coefficient_vector(5, &sl).unwrap().get(2).clone();
        let differs = t != lens_space_tau(5, &sl).unwrap();
        assert_eq!(differs, !c2.is_zero());
        if verdict == ZeroTypeVerdict::Obstructed {
            obstructed += 1;
        }
    }
    assert!(obstructed > 0);
}

#[test]
fn amphicheiral_knots_are_not_obstructed() {
    let lim = SkeinLimits::default();
    for k in common::knots().into_iter().filter(|k| k.amphicheiral) {
        let v = jones(&k.diagram, &lim).unwrap();
        for sl in [s(1, 1), s(3, 1), s(7, 2)] {
            assert_eq!(
                zero_type_obstruction(5, &v, &sl).unwrap(),
                ZeroTypeVerdict::NotObstructed,
                "{}",
                k.name
            );
        }
    }
}

#[test]
fn colored_json_input() {
    let text = r#"{"knot": "unknot", "r": 7, "colors": [[1], [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, "1"], [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, "1/1"]]}"#;
    let (name, c) = ColoredJonesVector::from_json(text).unwrap();
    assert_eq!(name, "unknot");
    assert_eq!(c, ColoredJonesVector::unknot(7).unwrap());
    assert!(ColoredJonesVector::from_json(r#"{"knot": "x", "r": 7, "colors": [[1]]}"#).is_err());
}

#[test]
fn slope_filters_agree_with_single_slope_test() {
    let slopes: Vec<Slope> = (1..=6i64)
        .flat_map(|m| (-5..=5i64).filter(move |&n| n != 0).map(move |n| (m, n)))
        .filter_map(|(m, n)| normalize_slope(m, n).ok())
        .collect();
    let detecting = detecting_slopes(&slopes).unwrap();
    assert!(!detecting.is_empty() && detecting.len() < slopes.len());
    for k in common::knots().into_iter().filter(|k| k.crossings <= 6) {
        let v = jones(&k.diagram, &SkeinLimits::default()).unwrap();
        let got = obstructed_slopes(&v, &detecting);
        let want: Vec<Slope> = slopes
            .iter()
            .filter(|sl| zero_type_obstruction(5, &v, sl).unwrap() == ZeroTypeVerdict::Obstructed)
            .cloned()
            .collect();
        assert_eq!(got, want, "{}", k.name);
    }
}
