//! Per-knot verdicts from the full criterion set.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Rational;
use crate::finite_type::{Extended, InvariantRecord};
use crate::floer_rank::RankProfile;
use crate::quantum_so3::ZeroTypeVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    IA,
    IAPrime,
    IB,
    IC,
    II,
    III,
    Genus1Alt,
    TorusNon2p,
    V3V5ZeroType,
    So3ZeroType,
}

impl Criterion {
    pub const ALL: [Criterion; 10] = [
        Criterion::IA,
        Criterion::IAPrime,
        Criterion::IB,
        Criterion::IC,
        Criterion::II,
        Criterion::III,
        Criterion::Genus1Alt,
        Criterion::TorusNon2p,
        Criterion::V3V5ZeroType,
        Criterion::So3ZeroType,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Criterion::IA => "i-a",
            Criterion::IAPrime => "i-a'",
            Criterion::IB => "i-b",
            Criterion::IC => "i-c",
            Criterion::II => "ii",
            Criterion::III => "iii",
            Criterion::Genus1Alt => "genus1-alt",
            Criterion::TorusNon2p => "torus-non2p",
            Criterion::V3V5ZeroType => "v3v5-zero-type",
            Criterion::So3ZeroType => "so3-zero-type",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.tag() == tag)
    }

    /// Whether firing rules out every chirally cosmetic surgery.
    pub fn excludes_all(self) -> bool {
        !matches!(self, Criterion::V3V5ZeroType | Criterion::So3ZeroType)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    ExcludedByFamily,
    NoCcs,
    ZeroTypeRuledOutOnly,
    Undetected,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExcludedByFamily => "ExcludedByFamily",
            Status::NoCcs => "NoCCS",
            Status::ZeroTypeRuledOutOnly => "ZeroTypeRuledOutOnly",
            Status::Undetected => "Undetected",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inputs, threshold and compared value of one criterion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditEntry {
    pub inputs: BTreeMap<String, String>,
    pub threshold: Option<String>,
    pub value: Option<String>,
    pub fired: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub knot: String,
    pub status: Status,
    pub fired: Vec<Criterion>,
    pub audit: BTreeMap<Criterion, AuditEntry>,
    /// Criteria that could not be evaluated.
    pub skipped: Vec<Criterion>,
}

impl Verdict {
    pub fn fired(&self, c: Criterion) -> bool {
        self.fired.contains(&c)
    }

    /// Member of the exception list: in the target family and not shown free of cosmetic surgeries.
    pub fn is_exception(&self) -> bool {
        matches!(
            self.status,
            Status::ZeroTypeRuledOutOnly | Status::Undetected
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{knot}: missing data for {}", tags(.criteria))]
    MissingData {
        knot: String,
        criteria: Vec<Criterion>,
    },
}

fn tags(cs: &[Criterion]) -> String {
    cs.iter().map(|c| c.tag()).collect::<Vec<_>>().join(", ")
}

/// Comparison used for the (i-c) bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    Strict,
    Inclusive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifierOptions {
    pub ic_boundary: Boundary,
}

struct Audit {
    map: BTreeMap<Criterion, AuditEntry>,
    skipped: Vec<Criterion>,
}

impl Audit {
    fn record(
        &mut self,
        c: Criterion,
        inputs: &[(&str, String)],
        threshold: Option<String>,
        value: Option<String>,
        fired: bool,
    ) {
        let inputs = inputs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.map.insert(
            c,
            AuditEntry {
                inputs,
                threshold,
                value,
                fired,
            },
        );
    }

    fn skip(&mut self, c: Criterion, inputs: &[(&str, String)]) {
        self.record(c, inputs, None, None, false);
        self.skipped.push(c);
    }
}

fn show<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "unknown".to_string(), |x| x.to_string())
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn le(o: &Extended, bound: &Rational, boundary: Boundary) -> bool {
    match (o, boundary) {
        (Extended::Infinite, _) => false,
        (Extended::Finite(x), Boundary::Inclusive) => x <= bound,
        (Extended::Finite(x), Boundary::Strict) => x < bound,
    }
}

pub fn homologically_thin(rec: &InvariantRecord) -> bool {
    rec.alternating || rec.quasi_alternating == Some(true)
}

/// `|tau|`, from the record or as `|sigma|/2` for thin knots.
pub fn tau_abs(rec: &InvariantRecord) -> Option<i64> {
    rec.tau.map(i64::abs).or_else(|| {
        if homologically_thin(rec) {
            rec.sigma.map(|s| s.abs() / 2)
        } else {
            None
        }
    })
}

pub fn classify(
    rec: &InvariantRecord,
    profile: Option<&RankProfile>,
) -> Result<Verdict, ClassifyError> {
    classify_with(rec, profile, &ClassifierOptions::default())
}

pub fn classify_with(
    rec: &InvariantRecord,
    profile: Option<&RankProfile>,
    opts: &ClassifierOptions,
) -> Result<Verdict, ClassifyError> {
    let mut a = Audit {
        map: BTreeMap::new(),
        skipped: Vec::new(),
    };
    let o = &rec.o_k;
    let x = 7 * rec.a2 * rec.a2 - rec.a2 - 10 * rec.a4;
    let o_str = o.to_string();

    let nu_max = profile.map(|p| p.nu()).or(match (rec.nu, rec.nu_mirror) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    });
    let genus = profile.map(|p| p.genus()).or(rec.genus);
    let nu_in = [
        ("g", show(&genus)),
        ("max_nu", show(&nu_max)),
        ("O", o_str.clone()),
    ];

    match (genus, nu_max) {
        (Some(g), Some(n)) => {
            let fa = g == n && le(o, &int(2), Boundary::Inclusive);
            a.record(
                Criterion::IA,
                &nu_in,
                Some("2".into()),
                Some(o_str.clone()),
                fa,
            );
            let fa2 = g != n && le(o, &int(4), Boundary::Inclusive);
            a.record(
                Criterion::IAPrime,
                &nu_in,
                Some("4".into()),
                Some(o_str.clone()),
                fa2,
            );
        }
        _ => {
            let fa = le(o, &int(2), Boundary::Inclusive);
            let mut inputs = nu_in.to_vec();
            inputs.push(("fallback", "nu unknown".into()));
            a.record(
                Criterion::IA,
                &inputs,
                Some("2".into()),
                Some(o_str.clone()),
                fa,
            );
            a.skip(Criterion::IAPrime, &nu_in);
        }
    }

    let thin = homologically_thin(rec);
    let t = tau_abs(rec);
    let ib_in = [
        ("thin", thin.to_string()),
        ("det", rec.det.to_string()),
        ("tau_abs", show(&t)),
        ("O", o_str.clone()),
    ];
    match (thin, t) {
        (false, _) => a.record(Criterion::IB, &ib_in, None, Some(o_str.clone()), false),
        (true, None) => a.skip(Criterion::IB, &ib_in),
        (true, Some(t)) => {
            let bound = Rational::new((rec.det.abs() - 2 * t - 1).into(), 2.into());
            let fired = le(o, &bound, Boundary::Inclusive);
            a.record(
                Criterion::IB,
                &ib_in,
                Some(bound.to_string()),
                Some(o_str.clone()),
                fired,
            );
        }
    }

    let ic_in = [
        ("a2", rec.a2.to_string()),
        ("d", rec.d_alex.to_string()),
        ("O", o_str.clone()),
    ];
    if rec.d_alex == 0 {
        a.record(Criterion::IC, &ic_in, None, Some(o_str.clone()), false);
    } else {
        let bound = Rational::new((8 * rec.a2).abs().into(), rec.d_alex.into());
        let fired = le(o, &bound, opts.ic_boundary);
        a.record(
            Criterion::IC,
            &ic_in,
            Some(bound.to_string()),
            Some(o_str.clone()),
            fired,
        );
    }

    let ii_in = [("v3", rec.v3.to_string()), ("max_nu", show(&nu_max))];
    match nu_max {
        Some(n) => a.record(
            Criterion::II,
            &ii_in,
            Some("0".into()),
            Some(n.to_string()),
            !rec.v3.is_zero() && n == 0,
        ),
        None if rec.v3.is_zero() => a.record(Criterion::II, &ii_in, None, None, false),
        None => a.skip(Criterion::II, &ii_in),
    }

    let iii_in = [
        ("v3", rec.v3.to_string()),
        ("v5", rec.v5.to_string()),
        ("7a2^2-a2-10a4", x.to_string()),
    ];
    let fired = rec.v3.is_zero() && !rec.v5.is_zero() && x != 0;
    a.record(Criterion::III, &iii_in, None, None, fired);

    let g1_in = [
        ("genus", show(&rec.genus)),
        ("alternating", rec.alternating.to_string()),
        ("amphicheiral", rec.amphicheiral.to_string()),
        ("torus_2p", rec.torus_2p.to_string()),
    ];
    match rec.genus {
        Some(g) => {
            let fired = g == 1 && rec.alternating && !rec.amphicheiral && !rec.torus_2p;
            a.record(Criterion::Genus1Alt, &g1_in, None, None, fired)
        }
        None if rec.alternating => a.skip(Criterion::Genus1Alt, &g1_in),
        None => a.record(Criterion::Genus1Alt, &g1_in, None, None, false),
    }

    a.record(
        Criterion::TorusNon2p,
        &[("torus_other", rec.torus_other.to_string())],
        None,
        None,
        rec.torus_other,
    );

    let zero = !rec.v3.is_zero() || !rec.v5.is_zero();
    a.record(
        Criterion::V3V5ZeroType,
        &[("v3", rec.v3.to_string()), ("v5", rec.v5.to_string())],
        None,
        None,
        zero,
    );

    let fired: Vec<Criterion> = a
        .map
        .iter()
        .filter(|(_, e)| e.fired)
        .map(|(c, _)| *c)
        .collect();
    let status = if rec.amphicheiral || rec.torus_2p {
        Status::ExcludedByFamily
    } else if fired.iter().any(|c| c.excludes_all()) {
        Status::NoCcs
    } else if !a.skipped.is_empty() {
        return Err(ClassifyError::MissingData {
            knot: rec.name.clone(),
            criteria: a.skipped,
        });
    } else if zero {
        Status::ZeroTypeRuledOutOnly
    } else {
        Status::Undetected
    };
    Ok(Verdict {
        knot: rec.name.clone(),
        status,
        fired,
        audit: a.map,
        skipped: a.skipped,
    })
}

/// Whether surgeries of `0`-type are ruled out; `so3` is the aggregated quantum test.
pub fn zero_type_excluded(rec: &InvariantRecord, so3: Option<ZeroTypeVerdict>) -> bool {
    !rec.v3.is_zero() || !rec.v5.is_zero() || so3 == Some(ZeroTypeVerdict::Obstructed)
}

/// `ZeroTypeRuledOutOnly` when `0`-type is excluded but no criterion excludes every type.
pub fn zero_type_only(rec: &InvariantRecord, so3: Option<ZeroTypeVerdict>) -> Option<Status> {
    let plus_minus = classify(rec, None)
        .map(|v| v.status == Status::NoCcs)
        .unwrap_or(false);
    (zero_type_excluded(rec, so3) && !plus_minus).then_some(Status::ZeroTypeRuledOutOnly)
}

/// Folds an SO(3) result into a verdict as a reporting adjunct.
pub fn with_so3(mut v: Verdict, so3: ZeroTypeVerdict) -> Verdict {
    let fired = so3 == ZeroTypeVerdict::Obstructed;
    v.audit.insert(
        Criterion::So3ZeroType,
        AuditEntry {
            inputs: BTreeMap::from([("r".to_string(), "5".to_string())]),
            threshold: None,
            value: Some(format!("{so3:?}")),
            fired,
        },
    );
    if fired && !v.fired.contains(&Criterion::So3ZeroType) {
        v.fired.push(Criterion::So3ZeroType);
        v.fired.sort();
        if v.status == Status::Undetected {
            v.status = Status::ZeroTypeRuledOutOnly;
        }
    }
    v
}
