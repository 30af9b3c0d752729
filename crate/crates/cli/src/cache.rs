//! Content-addressed on-disk cache of task results.
//!
//! Entries are written to a temporary file and renamed into place, so readers
//! never observe partial writes and concurrent writers of one key both succeed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Bumped whenever the payload layout or any computation changes.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    version: String,
    key: String,
    payload: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// The entry could not be read and was removed.
    Corrupt,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

pub fn sha256_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

/// `--cache-dir`, else `SYZLAB_CACHE_DIR`, else a per-user directory.
pub fn resolve_cache_dir(flag: Option<&Path>, env: Option<&str>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(e) = env.filter(|e| !e.is_empty()) {
        return PathBuf::from(e);
    }
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return PathBuf::from(x).join("syzlab");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|x| !x.is_empty()) {
        return PathBuf::from(home).join(".cache").join("syzlab");
    }
    std::env::temp_dir().join("syzlab-cache")
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, version: impl Into<String>) -> Self {
        Cache { dir: dir.into(), version: version.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("v{CACHE_FORMAT}")).join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> (Lookup, Option<Value>) {
        let path = self.path(key);
        let Ok(bytes) = fs::read(&path) else {
            return (Lookup::Miss, None);
        };
        match serde_json::from_slice::<Entry>(&bytes) {
            Ok(e) if e.key == key && e.format == CACHE_FORMAT && e.version == self.version => (Lookup::Hit, Some(e.payload)),
            Ok(e) if e.key == key => (Lookup::Miss, None),
            _ => {
                let _ = fs::remove_file(&path);
                (Lookup::Corrupt, None)
            }
        }
    }

    pub fn put(&self, key: &str, payload: &Value) -> Result<()> {
        let path = self.path(key);
        let dir = path.parent().expect("entry path has a parent");
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let entry = Entry { format: CACHE_FORMAT, version: self.version.clone(), key: key.to_string(), payload: payload.clone() };
        let bytes = serde_json::to_vec(&entry).expect("cache entries serialize");
        let nanos = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.subsec_nanos());
        let tmp = dir.join(format!(".{key}.{}.{nanos}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
        f.write_all(&bytes).and_then(|_| f.sync_all()).map_err(|e| CliError::io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            CliError::io(&path, e)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn put_get_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), "1.0.0");
        let key = sha256_hex(&["a", "b"]);
        assert_eq!(c.get(&key).0, Lookup::Miss);
        c.put(&key, &json!({"x": [1, 2]})).unwrap();
        assert_eq!(c.get(&key), (Lookup::Hit, Some(json!({"x": [1, 2]}))));
        let bumped = Cache::new(dir.path(), "1.0.1");
        assert_eq!(bumped.get(&key).0, Lookup::Miss);
    }

    #[test]
    fn corrupt_entries_are_removed() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), "1");
        let key = sha256_hex(&["k"]);
        c.put(&key, &json!(1)).unwrap();
        fs::write(c.path(&key), b"{not json").unwrap();
        assert_eq!(c.get(&key).0, Lookup::Corrupt);
        assert!(!c.path(&key).exists());
        assert_eq!(c.get(&key).0, Lookup::Miss);
    }

    #[test]
    fn concurrent_puts_both_succeed() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), "1");
        let key = sha256_hex(&["same"]);
        std::thread::scope(|s| {
            for _ in 0..4 {
                let c = c.clone();
                let key = key.clone();
                s.spawn(move || c.put(&key, &json!(0)).unwrap());
            }
        });
        assert_eq!(c.get(&key), (Lookup::Hit, Some(json!(0))));
    }

    #[test]
    fn directory_precedence() {
        let flag = PathBuf::from("/flag");
        assert_eq!(resolve_cache_dir(Some(&flag), Some("/env")), flag);
        assert_eq!(resolve_cache_dir(None, Some("/env")), PathBuf::from("/env"));
        assert!(resolve_cache_dir(None, None).ends_with("syzlab") || resolve_cache_dir(None, None).ends_with("syzlab-cache"));
    }

    #[test]
    fn hash_separates_parts() {
        assert_ne!(sha256_hex(&["ab", "c"]), sha256_hex(&["a", "bc"]));
    }
}
