#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use ccs_core::algebra::{LaurentPoly, LaurentPoly2};
use ccs_core::knot_model::{parse_pd, KnotDiagram};

pub struct KnotRow {
    pub name: String,
    pub diagram: KnotDiagram,
    pub crossings: usize,
    pub alternating: bool,
    pub quasi_alternating: bool,
    pub amphicheiral: bool,
    pub torus: Option<(i64, i64)>,
    pub genus: i64,
    pub signature: i64,
    pub nu: Option<i64>,
    pub nu_mirror: Option<i64>,
}

pub struct PolyRow {
    pub determinant: i64,
    pub signature: i64,
    pub tau: i64,
    pub jones: LaurentPoly,
    pub alexander: LaurentPoly,
    pub conway: LaurentPoly,
    pub kauffman: LaurentPoly2,
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn opt(s: &str) -> Option<i64> {
    s.trim().parse().ok()
}

pub fn knots() -> Vec<KnotRow> {
    let mut rdr = csv::Reader::from_path(root().join("data/knots10.csv")).expect("knot table");
    rdr.records()
        .map(|r| {
            let r = r.expect("row");
            let torus = match (opt(&r[6]), opt(&r[7])) {
                (Some(p), Some(q)) => Some((p, q)),
                _ => None,
            };
            KnotRow {
                name: r[0].to_string(),
                diagram: parse_pd(&r[1]).expect("pd"),
                crossings: r[2].parse().expect("crossings"),
                alternating: &r[3] == "true",
                quasi_alternating: &r[4] == "true",
                amphicheiral: &r[5] == "true",
                torus,
                genus: r[8].parse().expect("genus"),
                signature: r[9].parse().expect("signature"),
                nu: opt(&r[10]),
                nu_mirror: opt(&r[11]),
            }
        })
        .collect()
}

fn poly1(s: &str, step: i64) -> LaurentPoly {
    let mut terms = Vec::new();
    for t in s.split_whitespace() {
        let (c, e) = t.split_once(':').expect("term");
        terms.push((
            e.parse::<i64>().expect("exp") * step,
            c.parse::<i64>().expect("coef"),
        ));
    }
    LaurentPoly::from_int_terms(&terms)
}

pub fn polys() -> BTreeMap<String, PolyRow> {
    let mut rdr =
        csv::Reader::from_path(root().join("tests/data/knotinfo_polys.csv")).expect("poly table");
    rdr.records()
        .map(|r| {
            let r = r.expect("row");
            let mut k = Vec::new();
            for t in r[7].split_whitespace() {
                let v: Vec<i64> = t.split(':').map(|x| x.parse().expect("int")).collect();
                k.push((v[0], v[1] as i32, v[2] as i32));
            }
            (
                r[0].to_string(),
                PolyRow {
                    determinant: r[1].parse().expect("det"),
                    signature: r[2].parse().expect("sig"),
                    tau: r[3].parse().expect("tau"),
                    jones: poly1(&r[4], 1),
                    alexander: poly1(&r[5], 1),
                    conway: poly1(&r[6], 1),
                    kauffman: LaurentPoly2::from_terms(&k),
                },
            )
        })
        .collect()
}
