//! On-disk store for computed subspaces.
//!
//! Entries are content-addressed: the file name is the SHA-256 of
//! `(algebra, spec, degree, format version)`, so bumping [`FORMAT_VERSION`]
//! leaves old files unreachable. Every failure degrades to recomputation with
//! a warning on stderr; the cache never changes a result.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use brunlie_core::dkho::{GradedSubspace, SubspaceCache, SubspaceSpec};
use brunlie_core::Result;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::json;

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "BRUNLIE_CACHE_DIR";

/// `$BRUNLIE_CACHE_DIR`, else `$XDG_CACHE_HOME/brunlie`, else `~/.cache/brunlie`.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(d).join("brunlie"));
    }
    std::env::var_os("HOME")
        .filter(|d| !d.is_empty())
        .map(|h| PathBuf::from(h).join(".cache").join("brunlie"))
}

/// What happened on the last lookup; useful for tests and `--verbose`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Memory,
    Hit,
    Miss,
    Corrupt,
}

pub struct DiskCache {
    dir: Option<PathBuf>,
    version: u32,
    mem: SubspaceCache,
    warnings: Vec<String>,
    last: Option<Lookup>,
}

impl DiskCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self::with_version(dir, FORMAT_VERSION)
    }

    pub fn with_version(dir: Option<PathBuf>, version: u32) -> Self {
        DiskCache {
            dir,
            version,
            mem: SubspaceCache::new(),
            warnings: Vec::new(),
            last: None,
        }
    }

    /// Memory only.
    pub fn disabled() -> Self {
        Self::new(None)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn memory(&mut self) -> &mut SubspaceCache {
        &mut self.mem
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn last_lookup(&self) -> Option<Lookup> {
        self.last
    }

    pub fn key(&self, algebra: &str, spec: &SubspaceSpec, degree: usize) -> String {
        format!("{}|{:?}|{}|v{}", algebra, spec, degree, self.version)
    }

    pub fn path(&self, algebra: &str, spec: &SubspaceSpec, degree: usize) -> Option<PathBuf> {
        let key = self.key(algebra, spec, degree);
        let name = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.as_ref().map(|d| d.join(format!("{}.json", name)))
    }

    fn warn(&mut self, msg: String) {
        eprintln!("warning: {}", msg);
        self.warnings.push(msg);
    }

    fn load(&self, path: &Path, key: &str) -> std::result::Result<Option<GradedSubspace>, String> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if v.get("format_version").and_then(Value::as_u64) != Some(self.version as u64) {
            return Ok(None);
        }
        if v.get("key").and_then(Value::as_str) != Some(key) {
            return Err("key mismatch".into());
        }
        let sub = v.get("subspace").ok_or("missing subspace")?;
        json::parse_subspace(sub)
            .map(Some)
            .map_err(|e| e.to_string())
    }

    fn store(&mut self, path: &Path, key: &str, sub: &GradedSubspace, ambient_dim: usize) {
        let body = json!({ "format_version": self.version, "key": key, "subspace": json::subspace(sub, ambient_dim) });
        let res = (|| -> std::io::Result<()> {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            // write-then-rename so readers never see half a file
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.to_string().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        })();
        if let Err(e) = res {
            self.warn(format!(
                "cache write to {} failed ({}); continuing without caching",
                path.display(),
                e
            ));
        }
    }

    /// The degree-`degree` part of `spec`, from memory, disk, or computed.
    pub fn subspace(
        &mut self,
        algebra: &str,
        spec: &SubspaceSpec,
        degree: usize,
    ) -> Result<GradedSubspace> {
        if let Some(s) = self.mem.get(spec, degree) {
            self.last = Some(Lookup::Memory);
            return Ok(s.clone());
        }
        let key = self.key(algebra, spec, degree);
        let path = self.path(algebra, spec, degree);
        let mut outcome = Lookup::Miss;
        if let Some(p) = &path {
            match self.load(p, &key) {
                Ok(Some(sub)) if sub.n == spec.ambient() && sub.degree == degree => {
                    self.mem.insert(spec.clone(), degree, sub.clone());
                    self.last = Some(Lookup::Hit);
                    return Ok(sub);
                }
                Ok(Some(_)) => {
                    self.warn(format!(
                        "cache entry {} has the wrong shape; recomputing",
                        p.display()
                    ));
                    outcome = Lookup::Corrupt;
                }
                Ok(None) => {}
                Err(e) => {
                    self.warn(format!(
                        "cache entry {} is unreadable ({}); recomputing",
                        p.display(),
                        e
                    ));
                    outcome = Lookup::Corrupt;
                }
            }
        }
        let sub = self.mem.subspace(spec, degree)?;
        if let Some(p) = path {
            let dim = self.mem.basis(spec.ambient(), degree).dim();
            self.store(&p, &key, &sub, dim);
        }
        self.last = Some(outcome);
        Ok(sub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_includes_version() {
        let a = DiskCache::with_version(Some("/tmp/x".into()), 1);
        let b = DiskCache::with_version(Some("/tmp/x".into()), 2);
        let s = SubspaceSpec::Brun(4);
        assert_ne!(a.path("brun4", &s, 3), b.path("brun4", &s, 3));
        assert_eq!(a.path("brun4", &s, 3), a.path("brun4", &s, 3));
        assert!(DiskCache::disabled().path("brun4", &s, 3).is_none());
    }
}
