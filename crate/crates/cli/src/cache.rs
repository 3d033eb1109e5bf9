//! Content-addressed result cache: one `<digest>.json` file per request.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::request::ARTIFACT_VERSION;

pub const CACHE_DIR_ENV: &str = "HCLAB_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub digest: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub verified: bool,
    pub payload: Value,
}

impl CacheEntry {
    pub fn new(digest: String, verified: bool, payload: Value) -> Self {
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CacheEntry {
            digest,
            version: ARTIFACT_VERSION.to_string(),
            created,
            verified,
            payload,
        }
    }
}

#[derive(Debug)]
pub enum Lookup {
    Hit(CacheEntry),
    Miss,
    /// Written by another artifact version; ignored and later overwritten.
    Stale,
    /// Unreadable or inconsistent; the file has been removed.
    Evicted(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The environment variable wins over the flag. No directory, no cache.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(Cache::new(dir)),
            _ => flag.map(Cache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    pub fn load(&self, digest: &str) -> Lookup {
        let path = self.path(digest);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(_) => return Lookup::Miss,
        };
        let reason = match serde_json::from_slice::<CacheEntry>(&bytes) {
            Ok(entry) if entry.version != ARTIFACT_VERSION => return Lookup::Stale,
            Ok(entry) if entry.digest == digest => return Lookup::Hit(entry),
            Ok(entry) => format!("digest mismatch ({})", entry.digest),
            Err(e) => format!("unreadable entry: {e}"),
        };
        let _ = fs::remove_file(&path);
        Lookup::Evicted(reason)
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn store(&self, entry: &CacheEntry) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        let path = self.path(&entry.digest);
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}
