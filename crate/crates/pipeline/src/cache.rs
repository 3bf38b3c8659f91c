//! Content-addressed on-disk store for computed invariants.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

/// Part of every cache key; bump when a cached value's meaning changes.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            write_lock: Mutex::new(()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(pd: &str, invariant: &str) -> String {
        let mut h = Sha256::new();
        for part in [CODE_VERSION, invariant, pd] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, pd: &str, invariant: &str) -> Option<String> {
        match std::fs::read_to_string(self.path(&Self::key(pd, invariant))) {
            Ok(s) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(s)
            }
            Err(_) => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Writes atomically; a failed write only costs a recomputation later.
    pub fn put(&self, pd: &str, invariant: &str, value: &str) {
        let path = self.path(&Self::key(pd, invariant));
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let Some(parent) = path.parent() else { return };
        if std::fs::create_dir_all(parent).is_err() {
            return;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, value).is_ok() && std::fs::rename(&tmp, &path).is_err() {
            let _ = std::fs::remove_file(&tmp);
        }
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}
