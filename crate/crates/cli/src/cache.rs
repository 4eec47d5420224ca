//! Content-addressed JSON cache. Keys hash the operation, its parameters,
//! the field and the library version; unreadable entries are recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// Opens `dir`, creating it if needed. An unusable directory disables
    /// the cache with a warning rather than failing the command.
    pub fn open(dir: &Path) -> Self {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("warning: cache directory {} unusable ({e}); cache disabled", dir.display());
            return Cache::disabled();
        }
        let probe = dir.join(".probe");
        if let Err(e) = fs::write(&probe, b"") {
            eprintln!("warning: cache directory {} not writable ({e}); cache disabled", dir.display());
            return Cache::disabled();
        }
        let _ = fs::remove_file(probe);
        Cache {
            dir: Some(dir.to_path_buf()),
        }
    }

    pub fn key(op: &str, params: &Value, field: &str) -> String {
        let mut h = Sha256::new();
        h.update(op.as_bytes());
        h.update([0]);
        h.update(params.to_string().as_bytes());
        h.update([0]);
        h.update(field.as_bytes());
        h.update([0]);
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, value: &Value) {
        let Some(path) = self.path(key) else { return };
        // write then rename, so a reader never sees half a file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let ok = fs::write(&tmp, value.to_string()).and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = ok {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
            let _ = fs::remove_file(&tmp);
        }
    }

    /// Cached value for `(op, params, field)`, computing and storing it on a
    /// miss. The flag reports whether the cache answered.
    pub fn get_or_compute(
        &self,
        op: &str,
        params: &Value,
        field: &str,
        compute: impl FnOnce() -> Value,
    ) -> (Value, bool) {
        let key = Cache::key(op, params, field);
        if let Some(v) = self.get(&key) {
            return (v, true);
        }
        let v = compute();
        self.put(&key, &v);
        (v, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path());
        let params = json!({"n": 3});
        let (v, hit) = cache.get_or_compute("op", &params, "q", || json!([1, 2, 3]));
        assert!(!hit);
        let (w, hit) = cache.get_or_compute("op", &params, "q", || json!("recomputed"));
        assert!(hit);
        assert_eq!(v, w);
        let key = Cache::key("op", &params, "q");
        fs::write(dir.path().join(format!("{key}.json")), "[1, 2").unwrap();
        let (x, hit) = cache.get_or_compute("op", &params, "q", || json!([1, 2, 3]));
        assert!(!hit);
        assert_eq!(x, v);
        assert_ne!(Cache::key("op", &params, "q"), Cache::key("op", &params, "fp:7"));
    }
}
