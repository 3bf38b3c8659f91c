//! Per-knot invariant computation.

use ccs_core::algebra::{LaurentPoly, LaurentPoly2, Rational};
use ccs_core::criteria_classifier::{
    classify_with, homologically_thin, with_so3, zero_type_excluded, Verdict,
};
use ccs_core::finite_type::{
    alexander_degree, conway_coeffs, obstruction_o, v3_from_jones, v5_from_kauffman,
    InvariantRecord,
};
use ccs_core::floer_rank::{ck_thin, RankProfile};
use ccs_core::knot_model::Slope;
use ccs_core::quantum_so3::{detecting_slopes, obstructed_slopes, ZeroTypeVerdict};
use ccs_core::skein_engine::{
    alexander_conway, jones_from_kauffman, kauffman_polynomial, seifert_matrix, SeifertMatrix,
    SkeinCache,
};
use num_traits::Signed;

use crate::cache::DiskCache;
use crate::config::Config;
use crate::ingest::KnotTableRow;

/// Everything computed for one knot.
#[derive(Clone, Debug)]
pub struct Computed {
    pub record: InvariantRecord,
    pub profile: Option<RankProfile>,
    pub jones: LaurentPoly,
    pub alexander: LaurentPoly,
    pub verdict: Verdict,
    pub zero_type_excluded: bool,
    pub so3_obstructed: Vec<Slope>,
}

/// Slopes tested by the SO(3) adjunct, and those among them where the test can fire.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct So3Plan {
    pub tested: Vec<Slope>,
    pub detecting: Vec<Slope>,
}

impl So3Plan {
    pub fn new(cfg: &Config) -> Result<Self, String> {
        let tested = so3_test_slopes(cfg);
        let detecting = detecting_slopes(&tested).map_err(|e| format!("so3: {e}"))?;
        Ok(Self { tested, detecting })
    }
}

/// Slopes `m/n` with `1 <= m <= so3_max_m`, `1 <= |n| <= so3_max_n`, in lowest terms.
pub fn so3_test_slopes(cfg: &Config) -> Vec<Slope> {
    let mut out = Vec::new();
    for m in 1..=cfg.so3_max_m {
        for n in (-cfg.so3_max_n..=cfg.so3_max_n).filter(|&n| n != 0) {
            if let Ok(s) = ccs_core::knot_model::normalize_slope(m, n) {
                if s.m() == m && s.n() == n {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn kauffman_to_json(f: &LaurentPoly2) -> String {
    let terms: Vec<(i32, i32, String)> =
        f.terms().map(|((a, z), c)| (a, z, c.to_string())).collect();
    serde_json::to_string(&terms).expect("serializable")
}

fn kauffman_from_json(s: &str) -> Option<LaurentPoly2> {
    let terms: Vec<(i32, i32, String)> = serde_json::from_str(s).ok()?;
    let mut f = LaurentPoly2::zero();
    for (a, z, c) in terms {
        f.add_term(a, z, c.parse().ok()?);
    }
    Some(f)
}

fn kauffman_cached(
    row: &KnotTableRow,
    pd: &str,
    cfg: &Config,
    skein: &mut SkeinCache,
    disk: Option<&DiskCache>,
) -> Result<LaurentPoly2, String> {
    if let Some(f) = disk
        .and_then(|d| d.get(pd, "kauffman"))
        .and_then(|s| kauffman_from_json(&s))
    {
        return Ok(f);
    }
    let f = kauffman_polynomial(&row.diagram, skein, &cfg.limits)
        .map_err(|e| format!("kauffman: {e}"))?;
    if let Some(d) = disk {
        d.put(pd, "kauffman", &kauffman_to_json(&f));
    }
    Ok(f)
}

fn seifert_cached(
    row: &KnotTableRow,
    pd: &str,
    disk: Option<&DiskCache>,
) -> Result<SeifertMatrix, String> {
    let cached = disk
        .and_then(|d| d.get(pd, "seifert"))
        .and_then(|s| serde_json::from_str::<Vec<Vec<i64>>>(&s).ok())
        .and_then(SeifertMatrix::new);
    if let Some(v) = cached {
        return Ok(v);
    }
    let v = seifert_matrix(&row.diagram).map_err(|e| format!("seifert: {e}"))?;
    if let Some(d) = disk {
        d.put(
            pd,
            "seifert",
            &serde_json::to_string(v.entries()).expect("serializable"),
        );
    }
    Ok(v)
}

fn small(x: &num_bigint::BigInt, what: &str) -> Result<i64, String> {
    i64::try_from(x).map_err(|_| format!("{what} does not fit in 64 bits"))
}

pub fn compute(
    row: &KnotTableRow,
    cfg: &Config,
    so3: &So3Plan,
    skein: &mut SkeinCache,
    disk: Option<&DiskCache>,
) -> Result<Computed, String> {
    let pd = row.diagram.to_pd_string();
    let f = kauffman_cached(row, &pd, cfg, skein, disk)?;
    let jones = jones_from_kauffman(&f).map_err(|e| format!("jones: {e}"))?;
    let v3 = v3_from_jones(&jones);
    let v5 = match disk
        .and_then(|d| d.get(&pd, "v5"))
        .and_then(|s| s.parse::<Rational>().ok())
    {
        Some(v) => v,
        None => {
            let v = v5_from_kauffman(&f).map_err(|e| format!("v5: {e}"))?;
            if let Some(d) = disk {
                d.put(&pd, "v5", &v.to_string());
            }
            v
        }
    };

    let sm = seifert_cached(row, &pd, disk)?;
    let (alexander, conway) = alexander_conway(&sm);
    let (a2, a4) = conway_coeffs(&conway);
    let det = small(&sm.determinant().abs(), "determinant")?;
    let sigma = sm.signature();
    if let Some(s) = row.signature {
        if s != sigma {
            return Err(format!(
                "signature column says {s} but the Seifert matrix gives {sigma}"
            ));
        }
    }
    let top = alexander.max_exp2().unwrap_or(0) / 2;
    if let Some(g) = row.genus {
        if g < top {
            return Err(format!("genus {g} is below the Alexander degree {top}"));
        }
    }

    let mut record = InvariantRecord {
        name: row.name.clone(),
        a2,
        a4,
        v3: v3.clone(),
        v5,
        det,
        d_alex: alexander_degree(&alexander, cfg.degree_mode),
        genus: row.genus,
        sigma: Some(sigma),
        tau: None,
        nu: row.nu,
        nu_mirror: row.nu_mirror,
        alternating: row.alternating,
        quasi_alternating: row.quasi_alternating,
        amphicheiral: row.amphicheiral,
        torus_2p: row.is_torus_2p(),
        torus_other: row.is_torus_other(),
        c_k: None,
        o_k: obstruction_o(a2, a4, &v3),
    };
    if homologically_thin(&record) {
        record.c_k = Some(ck_thin(det, sigma.abs() / 2).map_err(|e| e.to_string())?);
    }
    let profile = match (record.nu, record.nu_mirror, record.c_k, record.genus) {
        (Some(nu), Some(nb), Some(c), Some(g)) => {
            Some(RankProfile::new(nu, nb, c, g).map_err(|e| e.to_string())?)
        }
        _ => None,
    };

    let verdict = classify_with(&record, profile.as_ref(), &cfg.classifier_options())
        .map_err(|e| e.to_string())?;
    let so3_obstructed = obstructed_slopes(&jones, &so3.detecting);
    let so3 = if !so3.tested.is_empty() && so3_obstructed.len() == so3.tested.len() {
        ZeroTypeVerdict::Obstructed
    } else {
        ZeroTypeVerdict::NotObstructed
    };
    let verdict = with_so3(verdict, so3);
    Ok(Computed {
        zero_type_excluded: zero_type_excluded(&record, Some(so3)),
        record,
        profile,
        jones,
        alexander,
        verdict,
        so3_obstructed,
    })
}
