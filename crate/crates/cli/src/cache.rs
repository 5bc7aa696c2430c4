//! Content-addressed JSON cache. Each entry stores its value together with a
//! SHA-256 checksum of the serialized value; a mismatch means recompute.

use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Corrupt,
    Disabled,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    /// Creates the directory if needed; an unusable directory disables the
    /// cache with a warning on stderr.
    pub fn new(dir: Option<PathBuf>) -> Self {
        let dir = dir.and_then(|d| match fs::create_dir_all(&d).and_then(|_| probe(&d)) {
            Ok(()) => Some(d),
            Err(e) => {
                eprintln!("warning: cache disabled, {} is not writable: {e}", d.display());
                None
            }
        });
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    #[cfg(test)]
    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", sha256_hex(key.as_bytes()))))
    }

    pub fn load(&self, key: &str) -> (Option<Value>, Lookup) {
        let Some(path) = self.path_for(key) else {
            return (None, Lookup::Disabled);
        };
        let Ok(text) = fs::read_to_string(&path) else {
            return (None, Lookup::Miss);
        };
        let entry: Option<(String, String, Value)> = serde_json::from_str::<Value>(&text).ok().and_then(|v| {
            Some((v.get("key")?.as_str()?.to_string(), v.get("checksum")?.as_str()?.to_string(), v.get("value")?.clone()))
        });
        match entry {
            Some((k, sum, value)) if k == key && sum == sha256_hex(value.to_string().as_bytes()) => (Some(value), Lookup::Hit),
            _ => (None, Lookup::Corrupt),
        }
    }

    pub fn store(&self, key: &str, value: &Value) {
        let Some(path) = self.path_for(key) else {
            return;
        };
        let entry = serde_json::json!({
            "key": key,
            "checksum": sha256_hex(value.to_string().as_bytes()),
            "value": value,
        });
        if let Err(e) = fs::write(&path, entry.to_string()) {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
    }

    /// Returns the cached value for `key`, computing and storing it on a miss
    /// or a checksum mismatch.
    pub fn get_or_compute<E>(&self, key: &str, f: impl FnOnce() -> Result<Value, E>) -> Result<(Value, Lookup), E> {
        let (cached, lookup) = self.load(key);
        if let Some(v) = cached {
            return Ok((v, lookup));
        }
        let v = f()?;
        self.store(key, &v);
        Ok((v, lookup))
    }
}

fn probe(dir: &Path) -> std::io::Result<()> {
    let p = dir.join(".write-probe");
    fs::write(&p, b"")?;
    fs::remove_file(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use foldlab_core::reps::freudenthal;
    use foldlab_core::rootdata::{build_root_datum, Isogeny, Series};

    fn diagram() -> Value {
        let d = build_root_datum(Series::A, 3, Isogeny::SimplyConnected).unwrap();
        let w = d.weight(d.from_fundamental(&[0, 1, 0]).unwrap());
        serde_json::to_value(freudenthal(&d, &w).unwrap()).unwrap()
    }

    #[test]
    fn cold_then_warm() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let key = "module/A/3/sc/0,1,0";
        let (v1, l1) = cache.get_or_compute::<()>(key, || Ok(diagram())).unwrap();
        assert_eq!(l1, Lookup::Miss);
        let (v2, l2) = cache.get_or_compute::<()>(key, || panic!("should hit")).unwrap();
        assert_eq!(l2, Lookup::Hit);
        assert_eq!(v1.to_string(), v2.to_string());
        assert_eq!(v1["total_dim"], 6);
    }

    #[test]
    fn checksum_mismatch_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let key = "module/A/3/sc/0,1,0";
        cache.store(key, &diagram());
        let path = cache.path_for(key).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"total_dim\":6", "\"total_dim\":7");
        fs::write(&path, text).unwrap();
        let (v, l) = cache.get_or_compute::<()>(key, || Ok(diagram())).unwrap();
        assert_eq!(l, Lookup::Corrupt);
        assert_eq!(v["total_dim"], 6);
        assert_eq!(cache.load(key).1, Lookup::Hit);
    }

    #[test]
    fn unwritable_dir_disables() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain-file");
        fs::write(&file, b"x").unwrap();
        let cache = Cache::new(Some(file.join("sub")));
        assert!(!cache.is_enabled());
        let (v, l) = cache.get_or_compute::<()>("k", || Ok(Value::from(1))).unwrap();
        assert_eq!((v, l), (Value::from(1), Lookup::Disabled));
    }
}
