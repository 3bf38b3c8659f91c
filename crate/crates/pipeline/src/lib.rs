//! Knot table ingestion, batch classification and report generation.

pub mod cache;
pub mod compute;
pub mod config;
pub mod emit;
pub mod ingest;
pub mod report;

pub use cache::DiskCache;
pub use compute::{compute, so3_test_slopes, Computed, So3Plan};
pub use config::{load_config, parse_config, Config, ConfigError, CACHE_DIR_ENV};
pub use emit::{emit, Format};
pub use ingest::{
    ingest, ingest_reader, ingest_str, IngestError, Ingested, KnotTableRow, RowError, HEADER,
};
pub use report::{
    aggregate, bucket_of, run_pipeline, BucketCounts, BucketExceptions, Failure, KnotEntry, Report,
};

/// The vendored table of prime knots up to ten crossings.
pub const FIXTURE_CSV: &str = include_str!("../../core/data/knots10.csv");

/// Opens the cache named by `CCS_CACHE_DIR`, if set.
pub fn cache_from_env() -> std::io::Result<Option<DiskCache>> {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => DiskCache::open(std::path::PathBuf::from(dir)).map(Some),
        _ => Ok(None),
    }
}
