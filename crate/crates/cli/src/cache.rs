//! On-disk cache of expensive exact results (basis expansions, coefficient functionals).
//!
//! Each entry is a JSON file `{key, sha256, payload}` where `payload` is the serialized
//! result as a string and `sha256` its hex digest.  A file whose digest does not match
//! is reported on stderr and recomputed; writes go through a temporary file that is
//! renamed into place, so readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    payload: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    /// A cache rooted at `dir`, or a disabled one.
    pub fn new(dir: Option<&Path>) -> Self {
        Cache { dir: dir.map(Path::to_path_buf) }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", &digest(key)[..32])))
    }

    fn load(&self, key: &str) -> Option<Value> {
        let path = self.path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("cache entry {} is unreadable ({e}); recomputing", path.display());
                return None;
            }
        };
        if entry.key != key || digest(&entry.payload) != entry.sha256 {
            log::warn!("cache entry {} failed its checksum; recomputing", path.display());
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    fn store(&self, key: &str, payload: &str) -> std::io::Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        let dir = path.parent().expect("cache files live in a directory");
        fs::create_dir_all(dir)?;
        let entry = Entry { key: key.to_string(), sha256: digest(payload), payload: payload.to_string() };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the cached value for `key`, or computes, stores and returns it.  The
    /// second component is the provenance line `"<key> sha256=<digest>"`, identical on
    /// hits and misses so that cached and uncached runs print the same envelope.
    pub fn get_or_compute<E>(&self, key: &str, compute: impl FnOnce() -> Result<Value, E>) -> Result<(Value, String), E> {
        let value = match self.load(key) {
            Some(v) => {
                log::info!("cache hit: {key}");
                v
            }
            None => {
                let v = compute()?;
                if let Err(e) = self.store(key, &v.to_string()) {
                    log::warn!("could not write cache entry for {key}: {e}");
                }
                v
            }
        };
        let line = format!("{key} sha256={}", digest(&value.to_string()));
        Ok((value, line))
    }
}
