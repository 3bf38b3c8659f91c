//! Deterministic report serialization.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json, csv or text")),
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => emit_csv(report),
        Format::Text => emit_text(report).into_bytes(),
    }
}

const CSV_HEADER: [&str; 20] = [
    "name",
    "crossings",
    "bucket",
    "target",
    "status",
    "fired",
    "zero_type_excluded",
    "a2",
    "a4",
    "v3",
    "v5",
    "det",
    "d",
    "genus",
    "signature",
    "nu",
    "nu_mirror",
    "c_k",
    "o",
    "error",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn emit_csv(report: &Report) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for k in &report.knots {
        let i = &k.invariants;
        w.write_record([
            k.name.clone(),
            k.crossings.to_string(),
            k.bucket.clone(),
            k.target.to_string(),
            k.status.clone(),
            k.fired.join(";"),
            k.zero_type_excluded.to_string(),
            i.a2.to_string(),
            i.a4.to_string(),
            i.v3.clone(),
            i.v5.clone(),
            i.det.to_string(),
            i.d.to_string(),
            opt(&i.genus),
            opt(&i.signature),
            opt(&i.nu),
            opt(&i.nu_mirror),
            opt(&i.c_k),
            i.o.clone(),
            String::new(),
        ])
        .expect("in-memory write");
    }
    for f in &report.failures {
        let mut rec = vec![String::new(); CSV_HEADER.len()];
        rec[0] = f.name.clone().unwrap_or_default();
        rec[4] = "Failed".into();
        rec[19] = format!("{} (line {}): {}", f.stage, f.line, f.message);
        w.write_record(&rec).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn emit_text(report: &Report) -> String {
    let mut s = String::new();
    let cols = [
        "bucket",
        "target",
        "v3!=0",
        "(i-c)",
        "alt",
        "(i-b)",
        "(i-b)-only",
        "(i-b)thin",
        "v3=0",
        "(iii)",
    ];
    let _ = writeln!(s, "Table 1");
    let _ = writeln!(s, "{}", cols.map(|c| format!("{c:>11}")).join(""));
    for b in &report.table1 {
        let vals = [
            b.target,
            b.v3_nonzero,
            b.ic,
            b.alternating,
            b.ib,
            b.ib_without_ic,
            b.ib_thin,
            b.v3_zero,
            b.iii,
        ];
        let _ = writeln!(
            s,
            "{:>11}{}",
            b.bucket,
            vals.map(|v| format!("{v:>11}")).join("")
        );
    }
    let _ = writeln!(s, "\nExceptions");
    for e in &report.exceptions {
        let _ = writeln!(s, "{:>6}: {}", e.bucket, e.knots.join(", "));
    }
    let _ = writeln!(
        s,
        "\n0-type not ruled out: {}",
        report.zero_type_exceptions.join(", ")
    );
    let _ = writeln!(s, "\nFailures: {}", report.failures.len());
    for f in &report.failures {
        let _ = writeln!(
            s,
            "  line {} {}: {}: {}",
            f.line,
            f.name.as_deref().unwrap_or("?"),
            f.stage,
            f.message
        );
    }
    s
}
