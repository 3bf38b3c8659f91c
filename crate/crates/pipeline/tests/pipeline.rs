use std::sync::OnceLock;

use ccs_core::criteria_classifier::Boundary;
use ccs_core::finite_type::DegreeMode;
use ccs_pipeline::{
    aggregate, emit, ingest, ingest_str, parse_config, run_pipeline, Config, DiskCache, Format,
    IngestError, Report, FIXTURE_CSV, HEADER,
};

fn full_report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| run_pipeline(&ingest_str(FIXTURE_CSV).unwrap(), &Config::default(), None))
}

fn small_table(max_crossings: usize) -> String {
    let mut lines = FIXTURE_CSV.lines();
    let mut out = format!("{}\n", lines.next().unwrap());
    for l in lines {
        let crossings: usize = l
            .rsplit("\",")
            .next()
            .unwrap()
            .split(',')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        if crossings <= max_crossings {
            out.push_str(l);
            out.push('\n');
        }
    }
    out
}

#[test]
fn header_only_file_is_empty() {
    let t = ingest_str(&format!("{}\n", HEADER.join(","))).unwrap();
    assert!(t.rows.is_empty() && t.errors.is_empty());
}

#[test]
fn trefoil_row_parses() {
    let t = ingest_str(&small_table(3)).unwrap();
    assert_eq!(t.rows.len(), 1);
    let r = &t.rows[0];
    assert_eq!(r.name, "3_1");
    assert_eq!(r.torus, Some((2, 3)));
    assert!(r.is_torus_2p() && !r.is_target());
    assert_eq!(
        (r.genus, r.signature, r.nu, r.nu_mirror),
        (Some(1), Some(-2), Some(1), Some(-1))
    );
    assert_eq!(r.line, 2);
}

#[test]
fn malformed_rows_are_isolated() {
    let text = small_table(6).replace(
        "X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)",
        "X(1,5,2,4),X(3,1,4,6),X(5,3,6)",
    );
    let text = text.replacen(",true,true,true,,,1,0,0,0", ",maybe,true,true,,,1,0,0,0", 1);
    let t = ingest_str(&text).unwrap();
    assert_eq!(t.errors.len(), 2);
    assert_eq!(t.errors[0].name.as_deref(), Some("3_1"));
    assert_eq!(t.errors[0].line, 2);
    assert_eq!(t.errors[1].name.as_deref(), Some("4_1"));
    assert!(t.errors[1].message.contains("alternating"));
    assert_eq!(t.rows.len(), 5);
}

#[test]
fn crossing_count_must_match_pd() {
    let text = small_table(3).replace("\",3,true", "\",4,true");
    let t = ingest_str(&text).unwrap();
    assert!(t.rows.is_empty());
    assert!(t.errors[0].message.contains("PD code has 3"));
}

#[test]
fn duplicate_names_fail_hard() {
    let mut text = small_table(4);
    let dup = text.lines().nth(1).unwrap().to_string();
    text.push_str(&dup);
    text.push('\n');
    match ingest_str(&text) {
        Err(IngestError::DuplicateName {
            name,
            first,
            second,
        }) => {
            assert_eq!((name.as_str(), first, second), ("3_1", 2, 4));
        }
        other => panic!("expected a duplicate error, got {other:?}"),
    }
}

#[test]
fn bad_header_is_rejected() {
    assert!(matches!(
        ingest_str("name,pd\n"),
        Err(IngestError::Header { .. })
    ));
    assert!(matches!(
        ingest("/nonexistent/table.csv"),
        Err(IngestError::Io { .. })
    ));
}

#[test]
fn config_parsing() {
    let c = parse_config(
        "# caps\nmax_crossings = 8\ndegree_mode = top\nic_boundary = inclusive\nthreads=2\n",
    )
    .unwrap();
    assert_eq!(c.max_crossings, Some(8));
    assert_eq!(c.degree_mode, DegreeMode::TopExponent);
    assert_eq!(c.ic_boundary, Boundary::Inclusive);
    assert_eq!(c.threads, Some(2));
    assert_eq!(parse_config("").unwrap(), Config::default());
    let err = parse_config("max_crossings = 8\nfoo = 1\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 2"), "{err}");
    assert!(parse_config("degree_mode = wide").is_err());
    assert!(parse_config("so3_max_m = 0").is_err());
}

#[test]
fn empty_report_emits_valid_documents() {
    let r = run_pipeline(
        &ingest_str(&format!("{}\n", HEADER.join(","))).unwrap(),
        &Config::default(),
        None,
    );
    let json: serde_json::Value = serde_json::from_slice(&emit(&r, Format::Json)).unwrap();
    assert_eq!(json["knots"], serde_json::json!([]));
    assert_eq!(json["table1"], serde_json::json!([]));
    let csv = String::from_utf8(emit(&r, Format::Csv)).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert!(csv.starts_with("name,crossings,"));
    let text = String::from_utf8(emit(&r, Format::Text)).unwrap();
    assert!(text.starts_with("Table 1"));
    assert!("yaml".parse::<Format>().is_err());
}

#[test]
fn emission_is_deterministic() {
    let table = ingest_str(&small_table(7)).unwrap();
    let a = run_pipeline(&table, &Config::default(), None);
    let b = run_pipeline(
        &table,
        &Config {
            threads: Some(3),
            ..Config::default()
        },
        None,
    );
    for f in [Format::Json, Format::Csv, Format::Text] {
        assert_eq!(emit(&a, f), emit(&b, f));
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::open(dir.path()).unwrap();
    let table = ingest_str(&small_table(7)).unwrap();
    let cfg = Config::default();
    let plain = emit(&run_pipeline(&table, &cfg, None), Format::Json);
    let cold = emit(&run_pipeline(&table, &cfg, Some(&cache)), Format::Json);
    let misses = cache.misses();
    assert!(misses > 0);
    let warm = emit(&run_pipeline(&table, &cfg, Some(&cache)), Format::Json);
    assert_eq!(cache.misses(), misses);
    assert!(cache.hits() >= 3 * table.rows.len() as u64);
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert_ne!(
        DiskCache::key("PD[X(1,5,2,4)]", "kauffman"),
        DiskCache::key("PD[X(1,5,2,4)]", "seifert")
    );
}

#[test]
fn corrupt_row_changes_only_its_entry() {
    let text = small_table(7);
    let good = run_pipeline(&ingest_str(&text).unwrap(), &Config::default(), None);
    let bad_text = text.replace(
        "X(1,5,2,4),X(3,9,4,8),X(5,1,6,10),X(7,3,8,2),X(9,7,10,6)",
        "X(1,5,2,4),X(3,9,4,8)",
    );
    let bad = run_pipeline(&ingest_str(&bad_text).unwrap(), &Config::default(), None);
    assert!(bad.has_failures() && !good.has_failures());
    assert_eq!(bad.failures.len(), 1);
    assert_eq!(bad.failures[0].name.as_deref(), Some("5_2"));
    let without: Vec<_> = good
        .knots
        .iter()
        .filter(|k| k.name != "5_2")
        .cloned()
        .collect();
    assert_eq!(bad.knots, without);
}

#[test]
fn max_crossings_filters_rows() {
    let table = ingest_str(&small_table(7)).unwrap();
    let r = run_pipeline(
        &table,
        &Config {
            max_crossings: Some(5),
            ..Config::default()
        },
        None,
    );
    let names: Vec<_> = r.knots.iter().map(|k| k.name.as_str()).collect();
    assert_eq!(names, ["3_1", "4_1", "5_1", "5_2"]);
}

#[test]
fn table_one_examples() {
    let r = full_report();
    assert!(!r.has_failures(), "{:?}", r.failures);
    assert_eq!(r.bucket("10").unwrap().target, 152);
    assert_eq!(r.bucket("9").unwrap().iii, 2);
    assert_eq!(
        r.exceptions_in("<=8"),
        ["6_2", "7_3", "7_5", "8_2", "8_4", "8_5", "8_6", "8_11", "8_21"]
    );
    assert_eq!(r.knot("6_2").unwrap().status, "ZeroTypeRuledOutOnly");
    assert_eq!(r.knot("4_1").unwrap().status, "ExcludedByFamily");
}

#[test]
fn aggregates_equal_sums_over_verdicts() {
    let r = full_report();
    let (table1, exceptions) = aggregate(&r.knots);
    assert_eq!(table1, r.table1);
    assert_eq!(exceptions, r.exceptions);
    for b in &r.table1 {
        let in_bucket: Vec<_> = r
            .knots
            .iter()
            .filter(|k| k.target && k.bucket == b.bucket)
            .collect();
        assert_eq!(b.target, in_bucket.len());
        assert_eq!(b.v3_nonzero + b.v3_zero, b.target);
        assert_eq!(b.no_ccs + b.exceptions, b.target);
        let ic = in_bucket
            .iter()
            .filter(|k| k.invariants.v3 != "0" && k.fired.iter().any(|t| t == "i-c"))
            .count();
        assert_eq!(b.ic, ic);
        assert!(b.ib_without_ic <= b.ib && b.ib <= b.ib_thin);
    }
}

#[test]
fn full_run_matches_golden_file() {
    let golden = include_bytes!("golden/report10.json");
    let got = emit(full_report(), Format::Json);
    assert!(
        got == golden.as_slice(),
        "report differs from tests/golden/report10.json"
    );
}

#[test]
fn dt_codes_are_accepted_in_tables() {
    let text = small_table(4).replace(
        "\"PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]\"",
        "\"DT[4,6,8,2]\"",
    );
    let t = ingest_str(&text).unwrap();
    assert!(t.errors.is_empty(), "{:?}", t.errors);
    let r = run_pipeline(&t, &Config::default(), None);
    let k = r.knot("4_1").unwrap();
    assert_eq!(
        (k.invariants.det, k.status.as_str()),
        (5, "ExcludedByFamily")
    );
}
