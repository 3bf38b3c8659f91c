use ccs_core::algebra::{rat, Rational};
use ccs_core::criteria_classifier::{
    classify, classify_with, tau_abs, with_so3, zero_type_excluded, zero_type_only, Boundary,
    ClassifierOptions, ClassifyError, Criterion, Status,
};
use ccs_core::finite_type::{obstruction_o, InvariantRecord};
use ccs_core::floer_rank::RankProfile;
use ccs_core::quantum_so3::ZeroTypeVerdict;
use proptest::prelude::*;

struct Knot {
    a2: i64,
    a4: i64,
    v3: Rational,
    v5: Rational,
    det: i64,
    d: i64,
    genus: i64,
    sigma: i64,
    nu: (i64, i64),
}

fn record(name: &str, k: Knot) -> InvariantRecord {
    InvariantRecord {
        name: name.into(),
        a2: k.a2,
        a4: k.a4,
        o_k: obstruction_o(k.a2, k.a4, &k.v3),
        v3: k.v3,
        v5: k.v5,
        det: k.det,
        d_alex: k.d,
        genus: Some(k.genus),
        sigma: Some(k.sigma),
        tau: None,
        nu: Some(k.nu.0),
        nu_mirror: Some(k.nu.1),
        alternating: true,
        quasi_alternating: Some(true),
        amphicheiral: false,
        torus_2p: false,
        torus_other: false,
        c_k: None,
    }
}

fn figure_eight() -> InvariantRecord {
    let k = Knot {
        a2: -1,
        a4: 0,
        v3: rat(0, 1),
        v5: rat(0, 1),
        det: 5,
        d: 2,
        genus: 1,
        sigma: 0,
        nu: (0, 0),
    };
    InvariantRecord {
        amphicheiral: true,
        ..record("4_1", k)
    }
}

fn six_two() -> InvariantRecord {
    let k = Knot {
        a2: -1,
        a4: -1,
        v3: rat(-1, 4),
        v5: rat(-43, 48),
        det: 11,
        d: 4,
        genus: 2,
        sigma: -2,
        nu: (1, -1),
    };
    record("6_2", k)
}

fn eight_fourteen() -> InvariantRecord {
    let k = Knot {
        a2: 0,
        a4: -2,
        v3: rat(0, 1),
        v5: rat(-5, 4),
        det: 31,
        d: 4,
        genus: 2,
        sigma: -2,
        nu: (1, -1),
    };
    record("8_14", k)
}

fn nine_twenty_eight() -> InvariantRecord {
    let k = Knot {
        a2: 1,
        a4: 1,
        v3: rat(0, 1),
        v5: rat(0, 1),
        det: 51,
        d: 6,
        genus: 3,
        sigma: -2,
        nu: (1, -1),
    };
    record("9_28", k)
}

fn five_two() -> InvariantRecord {
    let k = Knot {
        a2: 2,
        a4: 0,
        v3: rat(3, 4),
        v5: rat(-37, 16),
        det: 7,
        d: 2,
        genus: 1,
        sigma: -2,
        nu: (1, -1),
    };
    record("5_2", k)
}

#[test]
fn amphicheiral_knot_is_excluded_by_family() {
    let v = classify(&figure_eight(), None).unwrap();
    assert_eq!(v.status, Status::ExcludedByFamily);
    assert!(!v.is_exception());
    let tref = InvariantRecord {
        torus_2p: true,
        amphicheiral: false,
        ..figure_eight()
    };
    assert_eq!(
        classify(&tref, None).unwrap().status,
        Status::ExcludedByFamily
    );
}

#[test]
fn criterion_iii_fires_on_v3_zero_knot() {
    let v = classify(&eight_fourteen(), None).unwrap();
    assert_eq!(v.status, Status::NoCcs);
    assert!(v.fired(Criterion::III));
    assert!(!v.fired(Criterion::IA));
    assert!(v.fired(Criterion::V3V5ZeroType));
}

#[test]
fn six_two_is_an_exception() {
    let rec = six_two();
    assert_eq!(rec.o_k.finite(), Some(&rat(18, 1)));
    let v = classify(&rec, None).unwrap();
    assert!(v.is_exception());
    assert_eq!(v.status, Status::ZeroTypeRuledOutOnly);
    assert_eq!(v.fired, vec![Criterion::V3V5ZeroType]);
    let ib = &v.audit[&Criterion::IB];
    assert_eq!(ib.threshold.as_deref(), Some("4"));
    assert_eq!(ib.value.as_deref(), Some("18"));
    assert_eq!(v.audit[&Criterion::IC].threshold.as_deref(), Some("2"));
    assert_eq!(
        zero_type_only(&rec, None),
        Some(Status::ZeroTypeRuledOutOnly)
    );
}

#[test]
fn nine_twenty_eight_keeps_zero_type_open() {
    let rec = nine_twenty_eight();
    assert!(!zero_type_excluded(&rec, None));
    assert!(!zero_type_excluded(
        &rec,
        Some(ZeroTypeVerdict::NotObstructed)
    ));
    assert_eq!(zero_type_only(&rec, None), None);
    let v = classify(&rec, None).unwrap();
    assert_eq!(v.status, Status::Undetected);
    assert!(v.fired.is_empty());
    let so3 = with_so3(v.clone(), ZeroTypeVerdict::Obstructed);
    assert_eq!(so3.status, Status::ZeroTypeRuledOutOnly);
    assert!(so3.fired(Criterion::So3ZeroType));
    assert_eq!(
        with_so3(v.clone(), ZeroTypeVerdict::NotObstructed).status,
        Status::Undetected
    );
}

#[test]
fn genus_one_alternating_and_torus_rules() {
    let v = classify(&five_two(), None).unwrap();
    assert!(v.fired(Criterion::Genus1Alt));
    assert_eq!(v.status, Status::NoCcs);
    let torus = InvariantRecord {
        torus_other: true,
        alternating: false,
        quasi_alternating: Some(false),
        ..six_two()
    };
    let v = classify(&torus, None).unwrap();
    assert!(v.fired(Criterion::TorusNon2p));
    assert_eq!(v.status, Status::NoCcs);
}

#[test]
fn ic_boundary_is_configurable() {
    let k = Knot {
        a2: -1,
        a4: 1,
        v3: rat(1, 4),
        v5: rat(7, 48),
        det: 21,
        d: 4,
        genus: 2,
        sigma: 0,
        nu: (2, 0),
    };
    let rec = record("7_7", k);
    let strict = classify(&rec, None).unwrap();
    assert!(!strict.fired(Criterion::IC));
    let inclusive = classify_with(
        &rec,
        None,
        &ClassifierOptions {
            ic_boundary: Boundary::Inclusive,
        },
    )
    .unwrap();
    assert!(inclusive.fired(Criterion::IC));
    let trivial = InvariantRecord { d_alex: 0, ..rec };
    assert!(!classify_with(
        &trivial,
        None,
        &ClassifierOptions {
            ic_boundary: Boundary::Inclusive
        }
    )
    .unwrap()
    .fired(Criterion::IC));
}

#[test]
fn missing_nu_uses_fallback_or_reports() {
    let rec = InvariantRecord {
        nu: None,
        nu_mirror: None,
        alternating: false,
        quasi_alternating: None,
        ..six_two()
    };
    assert_eq!(
        classify(&rec, None),
        Err(ClassifyError::MissingData {
            knot: "6_2".into(),
            criteria: vec![Criterion::IAPrime, Criterion::II]
        })
    );
    let small_o = InvariantRecord {
        a2: 1,
        a4: 1,
        v3: rat(1, 1),
        o_k: obstruction_o(1, 1, &rat(1, 1)),
        ..rec
    };
    let v = classify(&small_o, None).unwrap();
    assert!(v.fired(Criterion::IA));
    assert_eq!(v.status, Status::NoCcs);
    assert_eq!(v.skipped, vec![Criterion::IAPrime, Criterion::II]);
}

#[test]
fn profile_supplies_nu() {
    let rec = InvariantRecord {
        nu: None,
        nu_mirror: None,
        ..six_two()
    };
    let p = RankProfile::new(0, 0, 4, 2).unwrap();
    let v = classify(&rec, Some(&p)).unwrap();
    assert!(v.fired(Criterion::II));
    let ia2 = &v.audit[&Criterion::IAPrime];
    assert_eq!(ia2.inputs["max_nu"], "0");
    assert!(!ia2.fired);
}

#[test]
fn tau_from_signature_for_thin_knots() {
    assert_eq!(tau_abs(&six_two()), Some(1));
    let thick = InvariantRecord {
        alternating: false,
        quasi_alternating: Some(false),
        ..six_two()
    };
    assert_eq!(tau_abs(&thick), None);
    assert_eq!(
        tau_abs(&InvariantRecord {
            tau: Some(-2),
            ..thick
        }),
        Some(2)
    );
}

#[test]
fn tags_round_trip() {
    for c in Criterion::ALL {
        assert_eq!(Criterion::from_tag(c.tag()), Some(c));
    }
    assert_eq!(Criterion::from_tag("iv"), None);
}

prop_compose! {
    fn any_record()(
        a2 in -5i64..6, a4 in -5i64..6, v3n in -8i64..9, v5n in -100i64..101,
        det_half in 0i64..30, d_half in 0i64..4, genus in 1i64..5, sigma_half in -3i64..4,
        nu_seed in 0i64..5, nub_seed in 0i64..5, alternating in any::<bool>(),
        qa in prop::option::of(any::<bool>()), torus_other in any::<bool>(), have_nu in any::<bool>(),
    ) -> InvariantRecord {
        let v3 = rat(v3n, 4);
        InvariantRecord {
            name: "k".into(),
            a2,
            a4,
            o_k: obstruction_o(a2, a4, &v3),
            v3,
            v5: rat(v5n, 48),
            det: 2 * det_half + 1,
            d_alex: 2 * d_half,
            genus: Some(genus),
            sigma: Some(2 * sigma_half),
            tau: None,
            nu: have_nu.then_some(nu_seed % (genus + 1)),
            nu_mirror: have_nu.then_some(-(nub_seed % (genus + 1))),
            alternating,
            quasi_alternating: qa,
            amphicheiral: false,
            torus_2p: false,
            torus_other,
            c_k: None,
        }
    }
}

fn mirror(r: &InvariantRecord) -> InvariantRecord {
    InvariantRecord {
        v3: -r.v3.clone(),
        v5: -r.v5.clone(),
        sigma: r.sigma.map(|s| -s),
        nu: r.nu_mirror,
        nu_mirror: r.nu,
        ..r.clone()
    }
}

proptest! {
    #[test]
    fn verdicts_are_mirror_invariant(rec in any_record()) {
        let a = classify(&rec, None);
        let b = classify(&mirror(&rec), None);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.status, b.status);
                prop_assert_eq!(a.fired, b.fired);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn adding_nu_never_loses_no_ccs(rec in any_record(), nu_seed in 0i64..5, nub_seed in 0i64..5) {
        let g = rec.genus.unwrap();
        let bare = InvariantRecord { nu: None, nu_mirror: None, ..rec.clone() };
        let full = InvariantRecord { nu: Some(nu_seed % (g + 1)), nu_mirror: Some(-(nub_seed % (g + 1))), ..rec };
        if let Ok(v) = classify(&bare, None) {
            if v.status == Status::NoCcs {
                prop_assert_eq!(classify(&full, None).unwrap().status, Status::NoCcs);
            }
        }
    }

    #[test]
    fn no_ccs_needs_an_excluding_tag(rec in any_record()) {
        if let Ok(v) = classify(&rec, None) {
            prop_assert_eq!(v.status == Status::NoCcs, v.fired.iter().any(|c| c.excludes_all()));
        }
    }
}
