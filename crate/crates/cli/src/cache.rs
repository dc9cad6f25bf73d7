//! On-disk homology cache keyed by engine version and canonical PD text.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use khdetect::khovanov::BigradedDimensions;
use khdetect::ENGINE_VERSION;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_VAR: &str = "KHDETECT_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".khdetect-cache";

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    engine: String,
    pd: String,
    reduced: bool,
    homology: serde_json::Value,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Miss,
    Hit(BigradedDimensions),
    /// Present but unreadable, or written for a different key.
    Corrupt,
}

#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    /// Directory from `KHDETECT_CACHE_DIR`, else `.khdetect-cache`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_DIR_VAR).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex sha256 of the engine tag, the theory and the canonical PD.
    pub fn key(pd: &str, reduced: bool) -> String {
        let mut h = Sha256::new();
        h.update(ENGINE_VERSION.as_bytes());
        h.update([0u8, reduced as u8, 0u8]);
        h.update(pd.as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, pd: &str, reduced: bool) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(pd, reduced)))
    }

    pub fn load(&self, pd: &str, reduced: bool) -> Lookup {
        let bytes = match fs::read(self.path_for(pd, reduced)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(_) => return Lookup::Corrupt,
        };
        let Ok(rec) = serde_json::from_slice::<Record>(&bytes) else { return Lookup::Corrupt };
        if rec.engine != ENGINE_VERSION || rec.pd != pd || rec.reduced != reduced {
            return Lookup::Corrupt;
        }
        match BigradedDimensions::from_json(&rec.homology.to_string()) {
            Ok(h) => Lookup::Hit(h),
            Err(_) => Lookup::Corrupt,
        }
    }

    /// Writes through a temporary file and a rename.
    pub fn store(&self, pd: &str, reduced: bool, h: &BigradedDimensions) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let rec = Record { engine: ENGINE_VERSION.to_string(), pd: pd.to_string(), reduced, homology: h.to_json_value() };
        let path = self.path_for(pd, reduced);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&rec).map_err(io::Error::other)?)?;
        fs::rename(tmp, path)
    }
}
