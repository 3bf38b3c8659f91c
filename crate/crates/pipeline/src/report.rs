//! Batch orchestration and aggregate counts.

use std::collections::BTreeMap;

use ccs_core::criteria_classifier::{Criterion, Status};
use ccs_core::skein_engine::SkeinCache;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::DiskCache;
use crate::compute::{compute, Computed, So3Plan};
use crate::config::Config;
use crate::ingest::{Ingested, KnotTableRow};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditOut {
    pub fired: bool,
    pub inputs: BTreeMap<String, String>,
    pub threshold: Option<String>,
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsOut {
    pub a2: i64,
    pub a4: i64,
    pub v3: String,
    pub v5: String,
    pub det: i64,
    pub d: i64,
    pub genus: Option<i64>,
    pub signature: Option<i64>,
    pub nu: Option<i64>,
    pub nu_mirror: Option<i64>,
    pub c_k: Option<i64>,
    pub o: String,
    pub alexander: String,
    pub jones: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotEntry {
    pub name: String,
    pub crossings: usize,
    pub bucket: String,
    pub target: bool,
    pub alternating: bool,
    pub quasi_alternating: Option<bool>,
    pub status: String,
    pub fired: Vec<String>,
    pub zero_type_excluded: bool,
    /// Number of detecting slopes at which the SO(3) test fires.
    pub so3_obstructed: usize,
    pub invariants: InvariantsOut,
    pub audit: BTreeMap<String, AuditOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub name: Option<String>,
    pub line: u64,
    pub stage: String,
    pub message: String,
}

/// Table 1 counts for one crossing bucket.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BucketCounts {
    pub bucket: String,
    pub target: usize,
    pub v3_nonzero: usize,
    pub ic: usize,
    pub alternating: usize,
    /// Alternating knots with `v3 != 0` where (i-b) fires, overlaps with (i-c) included.
    pub ib: usize,
    /// As `ib`, excluding knots already caught by (i-c).
    pub ib_without_ic: usize,
    /// Homologically thin knots (alternating or quasi-alternating) with `v3 != 0` where (i-b) fires.
    pub ib_thin: usize,
    pub v3_zero: usize,
    pub iii: usize,
    pub no_ccs: usize,
    pub exceptions: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BucketExceptions {
    pub bucket: String,
    pub knots: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub so3_tested_slopes: Vec<String>,
    pub so3_detecting_slopes: Vec<String>,
    pub knots: Vec<KnotEntry>,
    pub failures: Vec<Failure>,
    pub table1: Vec<BucketCounts>,
    pub exceptions: Vec<BucketExceptions>,
    pub zero_type_exceptions: Vec<String>,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn knot(&self, name: &str) -> Option<&KnotEntry> {
        self.knots.iter().find(|k| k.name == name)
    }

    pub fn bucket(&self, bucket: &str) -> Option<&BucketCounts> {
        self.table1.iter().find(|b| b.bucket == bucket)
    }

    pub fn exceptions_in(&self, bucket: &str) -> Vec<String> {
        self.exceptions
            .iter()
            .find(|e| e.bucket == bucket)
            .map(|e| e.knots.clone())
            .unwrap_or_default()
    }
}

pub fn bucket_of(crossings: usize) -> String {
    if crossings <= 8 {
        "<=8".to_string()
    } else {
        crossings.to_string()
    }
}

fn bucket_rank(b: &str) -> usize {
    b.parse().unwrap_or(0)
}

fn entry(row: &KnotTableRow, c: &Computed) -> KnotEntry {
    let rec = &c.record;
    let audit = c
        .verdict
        .audit
        .iter()
        .map(|(k, a)| {
            let out = AuditOut {
                fired: a.fired,
                inputs: a.inputs.clone(),
                threshold: a.threshold.clone(),
                value: a.value.clone(),
            };
            (k.tag().to_string(), out)
        })
        .collect();
    KnotEntry {
        name: row.name.clone(),
        crossings: row.crossing_number,
        bucket: bucket_of(row.crossing_number),
        target: row.is_target(),
        alternating: row.alternating,
        quasi_alternating: row.quasi_alternating,
        status: c.verdict.status.as_str().to_string(),
        fired: c
            .verdict
            .fired
            .iter()
            .map(|f| f.tag().to_string())
            .collect(),
        zero_type_excluded: c.zero_type_excluded,
        so3_obstructed: c.so3_obstructed.len(),
        invariants: InvariantsOut {
            a2: rec.a2,
            a4: rec.a4,
            v3: rec.v3.to_string(),
            v5: rec.v5.to_string(),
            det: rec.det,
            d: rec.d_alex,
            genus: rec.genus,
            signature: rec.sigma,
            nu: rec.nu,
            nu_mirror: rec.nu_mirror,
            c_k: rec.c_k,
            o: rec.o_k.to_string(),
            alexander: c.alexander.to_string(),
            jones: c.jones.to_string(),
        },
        audit,
    }
}

/// Runs every row; per-knot failures are recorded, never fatal.
pub fn run_pipeline(input: &Ingested, cfg: &Config, disk: Option<&DiskCache>) -> Report {
    let rows: Vec<&KnotTableRow> = input
        .rows
        .iter()
        .filter(|r| cfg.max_crossings.is_none_or(|m| r.crossing_number <= m))
        .collect();
    let mut failures: Vec<Failure> = input
        .errors
        .iter()
        .map(|e| Failure {
            name: e.name.clone(),
            line: e.line,
            stage: "ingest".into(),
            message: e.message.clone(),
        })
        .collect();
    let plan = match So3Plan::new(cfg) {
        Ok(p) => p,
        Err(message) => {
            failures.push(Failure {
                name: None,
                line: 0,
                stage: "so3".into(),
                message,
            });
            So3Plan::default()
        }
    };
    let work = || -> Vec<Result<Computed, String>> {
        rows.par_iter()
            .map_init(SkeinCache::new, |skein, row| {
                compute(row, cfg, &plan, skein, disk)
            })
            .collect()
    };
    let results = match cfg
        .threads
        .and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok())
    {
        Some(pool) => pool.install(work),
        None => work(),
    };

    let mut knots = Vec::new();
    for (row, res) in rows.iter().zip(&results) {
        match res {
            Ok(c) => knots.push(entry(row, c)),
            Err(message) => failures.push(Failure {
                name: Some(row.name.clone()),
                line: row.line,
                stage: "compute".into(),
                message: message.clone(),
            }),
        }
    }
    failures.sort_by(|a, b| (a.line, &a.name).cmp(&(b.line, &b.name)));
    let zero_type_exceptions = rows
        .iter()
        .zip(&results)
        .filter_map(|(row, res)| res.as_ref().ok().map(|c| (row, c)))
        .filter(|(row, c)| !row.amphicheiral && !c.zero_type_excluded)
        .map(|(row, _)| row.name.clone())
        .collect();
    let (table1, exceptions) = aggregate(&knots);
    let show = |v: &[ccs_core::knot_model::Slope]| v.iter().map(|s| s.to_string()).collect();
    Report {
        schema_version: SCHEMA_VERSION,
        so3_tested_slopes: show(&plan.tested),
        so3_detecting_slopes: show(&plan.detecting),
        knots,
        failures,
        table1,
        exceptions,
        zero_type_exceptions,
    }
}

fn fired(k: &KnotEntry, c: Criterion) -> bool {
    k.fired.iter().any(|t| t == c.tag())
}

/// Table 1 rows and Table 2 exception lists from per-knot entries.
pub fn aggregate(knots: &[KnotEntry]) -> (Vec<BucketCounts>, Vec<BucketExceptions>) {
    let mut buckets: BTreeMap<(usize, String), BucketCounts> = BTreeMap::new();
    let mut exceptions: BTreeMap<(usize, String), Vec<String>> = BTreeMap::new();
    for k in knots.iter().filter(|k| k.target) {
        let b = buckets
            .entry((bucket_rank(&k.bucket), k.bucket.clone()))
            .or_insert_with(|| BucketCounts {
                bucket: k.bucket.clone(),
                ..Default::default()
            });
        b.target += 1;
        if k.invariants.v3 == "0" {
            b.v3_zero += 1;
            b.iii += usize::from(fired(k, Criterion::III));
        } else {
            b.v3_nonzero += 1;
            let ic = fired(k, Criterion::IC);
            let ib = fired(k, Criterion::IB);
            b.ic += usize::from(ic);
            if k.alternating {
                b.alternating += 1;
                b.ib += usize::from(ib);
                b.ib_without_ic += usize::from(ib && !ic);
            }
            b.ib_thin += usize::from(ib);
        }
        if k.status == Status::NoCcs.as_str() {
            b.no_ccs += 1;
        }
        if k.status == Status::ZeroTypeRuledOutOnly.as_str()
            || k.status == Status::Undetected.as_str()
        {
            b.exceptions += 1;
            exceptions
                .entry((bucket_rank(&k.bucket), k.bucket.clone()))
                .or_default()
                .push(k.name.clone());
        }
    }
    let exceptions = exceptions
        .into_iter()
        .map(|((_, bucket), knots)| BucketExceptions { bucket, knots })
        .collect();
    (buckets.into_values().collect(), exceptions)
}
