//! Content-addressed on-disk cache for computed spectra.
//!
//! One JSON record per (function, metric) pair, keyed by the SHA-256 of the
//! function's LUT-file serialization — distinct recipes that materialize the
//! same table share entries. Lookups and stores are best-effort: a corrupt
//! or unwritable cache degrades to recomputation, never to an error.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::funcrep::Lut;
use crate::spectra::{self, BoomerangSpectrum, DifferentialSpectrum, WalshSpectrum};
use crate::Result;

#[derive(Debug, Clone)]
pub struct SpectrumCache {
    dir: PathBuf,
    enabled: bool,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>, enabled: bool) -> SpectrumCache {
        SpectrumCache {
            dir: dir.into(),
            enabled,
        }
    }

    /// A cache that never hits and never writes.
    pub fn disabled() -> SpectrumCache {
        SpectrumCache {
            dir: PathBuf::new(),
            enabled: false,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str, metric: &str) -> PathBuf {
        self.dir.join(format!("{key}.{metric}.json"))
    }

    fn lookup<T: DeserializeOwned>(&self, key: &str, metric: &str) -> Option<T> {
        if !self.enabled {
            return None;
        }
        let text = std::fs::read_to_string(self.path(key, metric)).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn store<T: Serialize>(&self, key: &str, metric: &str, value: &T) {
        if !self.enabled {
            return;
        }
        if std::fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        if let Ok(text) = serde_json::to_string(value) {
            let _ = std::fs::write(self.path(key, metric), text);
        }
    }

    pub fn ddt(&self, lut: &Lut) -> Result<DifferentialSpectrum> {
        let key = lut.content_hash();
        if let Some(hit) = self.lookup(&key, "ddt") {
            return Ok(hit);
        }
        let spec = spectra::ddt(lut)?;
        self.store(&key, "ddt", &spec);
        Ok(spec)
    }

    pub fn walsh(&self, lut: &Lut) -> Result<WalshSpectrum> {
        let key = lut.content_hash();
        if let Some(hit) = self.lookup(&key, "walsh") {
            return Ok(hit);
        }
        let spec = spectra::walsh(lut)?;
        self.store(&key, "walsh", &spec);
        Ok(spec)
    }

    pub fn bct(&self, lut: &Lut) -> Result<BoomerangSpectrum> {
        let key = lut.content_hash();
        if let Some(hit) = self.lookup(&key, "bct") {
            return Ok(hit);
        }
        let spec = spectra::bct(lut)?;
        self.store(&key, "bct", &spec);
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::Field;
    use std::sync::Arc;

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("sboxkit-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let cache = SpectrumCache::new(&dir, true);
        let f = Arc::new(Field::new(6, None, None).unwrap());
        let gold = Lut::monomial(f, 5);

        let fresh = cache.ddt(&gold).unwrap();
        let hit = cache.ddt(&gold).unwrap();
        assert_eq!(fresh, hit);
        assert!(cache.path(&gold.content_hash(), "ddt").exists());

        let w1 = cache.walsh(&gold).unwrap();
        let w2 = cache.walsh(&gold).unwrap();
        assert_eq!(w1, w2);

        let b1 = cache.bct(&gold).unwrap();
        let b2 = cache.bct(&gold).unwrap();
        assert_eq!(b1, b2);

        let disabled = SpectrumCache::disabled();
        assert_eq!(disabled.ddt(&gold).unwrap(), fresh);
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn corrupt_entries_fall_back_to_recompute() {
        let dir = std::env::temp_dir().join(format!("sboxkit-cache-bad-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let cache = SpectrumCache::new(&dir, true);
        let f = Arc::new(Field::new(4, None, None).unwrap());
        let gold = Lut::monomial(f, 3);
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(cache.path(&gold.content_hash(), "ddt"), "{not json").unwrap();
        let spec = cache.ddt(&gold).unwrap();
        assert_eq!(spec, spectra::ddt(&gold).unwrap());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
