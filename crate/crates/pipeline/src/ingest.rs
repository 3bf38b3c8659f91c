//! Knot table CSV ingestion.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use ccs_core::knot_model::{parse_knot_code, KnotDiagram};
use thiserror::Error;

pub const HEADER: [&str; 12] = [
    "name",
    "pd_code",
    "crossings",
    "alternating",
    "quasi_alternating",
    "amphicheiral",
    "torus_p",
    "torus_q",
    "genus",
    "signature",
    "nu",
    "nu_mirror",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTableRow {
    pub line: u64,
    pub name: String,
    pub pd_code: String,
    pub diagram: KnotDiagram,
    pub crossing_number: usize,
    pub alternating: bool,
    pub quasi_alternating: Option<bool>,
    pub amphicheiral: bool,
    pub torus: Option<(i64, i64)>,
    pub genus: Option<i64>,
    pub signature: Option<i64>,
    pub nu: Option<i64>,
    pub nu_mirror: Option<i64>,
}

impl KnotTableRow {
    pub fn is_torus_2p(&self) -> bool {
        matches!(self.torus, Some((p, q)) if p.abs().min(q.abs()) == 2)
    }

    pub fn is_torus_other(&self) -> bool {
        self.torus.is_some() && !self.is_torus_2p()
    }

    /// Neither amphicheiral nor a `(2,p)`-torus knot.
    pub fn is_target(&self) -> bool {
        !self.amphicheiral && !self.is_torus_2p()
    }
}

/// A row that could not be ingested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowError {
    pub line: u64,
    pub name: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    pub rows: Vec<KnotTableRow>,
    pub errors: Vec<RowError>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("unexpected header {found:?}; expected {}", HEADER.join(","))]
    Header { found: Vec<String> },
    #[error("duplicate knot name {name} on lines {first} and {second}")]
    DuplicateName {
        name: String,
        first: u64,
        second: u64,
    },
}

pub fn ingest(path: impl AsRef<Path>) -> Result<Ingested, IngestError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ingest_reader(file)
}

pub fn ingest_str(text: &str) -> Result<Ingested, IngestError> {
    ingest_reader(text.as_bytes())
}

pub fn ingest_reader<R: Read>(reader: R) -> Result<Ingested, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if header != HEADER {
        return Err(IngestError::Header { found: header });
    }
    let mut out = Ingested::default();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.errors.push(RowError {
                    line,
                    name: None,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = rec.position().map_or(0, |p| p.line());
        let name = rec.get(0).unwrap_or("").trim().to_string();
        if !name.is_empty() {
            if let Some(&first) = seen.get(&name) {
                return Err(IngestError::DuplicateName {
                    name,
                    first,
                    second: line,
                });
            }
            seen.insert(name.clone(), line);
        }
        match parse_row(&rec, line) {
            Ok(row) => out.rows.push(row),
            Err(message) => out.errors.push(RowError {
                line,
                name: (!name.is_empty()).then_some(name),
                message,
            }),
        }
    }
    Ok(out)
}

fn field(rec: &csv::StringRecord, i: usize) -> &str {
    rec.get(i).unwrap_or("").trim()
}

fn opt_int(rec: &csv::StringRecord, i: usize) -> Result<Option<i64>, String> {
    let s = field(rec, i);
    if s.is_empty() {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| format!("{}: not an integer: {s:?}", HEADER[i]))
}

fn opt_bool(rec: &csv::StringRecord, i: usize) -> Result<Option<bool>, String> {
    match field(rec, i).to_ascii_lowercase().as_str() {
        "" => Ok(None),
        "true" | "1" | "yes" | "y" => Ok(Some(true)),
        "false" | "0" | "no" | "n" => Ok(Some(false)),
        other => Err(format!("{}: not a flag: {other:?}", HEADER[i])),
    }
}

fn req<T>(v: Option<T>, i: usize) -> Result<T, String> {
    v.ok_or_else(|| format!("{} is required", HEADER[i]))
}

fn parse_row(rec: &csv::StringRecord, line: u64) -> Result<KnotTableRow, String> {
    if rec.len() != HEADER.len() {
        return Err(format!(
            "expected {} fields, found {}",
            HEADER.len(),
            rec.len()
        ));
    }
    let name = field(rec, 0);
    if name.is_empty() {
        return Err("name is required".into());
    }
    let pd_code = field(rec, 1).to_string();
    let diagram = parse_knot_code(&pd_code).map_err(|e| format!("pd_code: {e}"))?;
    let crossing_number: usize = field(rec, 2)
        .parse()
        .map_err(|_| format!("crossings: not a count: {:?}", field(rec, 2)))?;
    if diagram.n_crossings() != crossing_number {
        return Err(format!(
            "crossings = {crossing_number} but the PD code has {}",
            diagram.n_crossings()
        ));
    }
    let torus = match (opt_int(rec, 6)?, opt_int(rec, 7)?) {
        (Some(p), Some(q)) => Some((p, q)),
        (None, None) => None,
        _ => return Err("torus_p and torus_q must both be set or both empty".into()),
    };
    Ok(KnotTableRow {
        line,
        name: name.to_string(),
        pd_code,
        diagram,
        crossing_number,
        alternating: req(opt_bool(rec, 3)?, 3)?,
        quasi_alternating: opt_bool(rec, 4)?,
        amphicheiral: req(opt_bool(rec, 5)?, 5)?,
        torus,
        genus: opt_int(rec, 8)?,
        signature: opt_int(rec, 9)?,
        nu: opt_int(rec, 10)?,
        nu_mirror: opt_int(rec, 11)?,
    })
}
