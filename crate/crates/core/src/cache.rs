//! One JSON file per derived value, checksummed and versioned.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::nadf::{DerivedKey, DerivedValue};
use crate::CODE_VERSION;

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    code_version: String,
    checksum: String,
    payload: DerivedValue,
}

fn checksum(payload: &DerivedValue) -> Result<String> {
    let text = serde_json::to_string(payload)?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

/// Directory of cached [`DerivedValue`]s. Writes go through a temporary file
/// and a rename, so readers never see a partial file.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_name(key: &DerivedKey) -> String {
        format!(
            "{}-{}-n{}-i{}-t{}-{}-{}.json",
            key.functor,
            key.module,
            key.n,
            key.i,
            key.truncation(),
            key.path,
            CODE_VERSION
        )
    }

    pub fn path_for(&self, key: &DerivedKey) -> PathBuf {
        self.dir.join(Self::file_name(key))
    }

    /// Returns the cached value, or `None` on a miss or any sign of damage.
    pub fn load(&self, key: &DerivedKey) -> Option<DerivedValue> {
        let path = self.path_for(key);
        let text = fs::read_to_string(&path).ok()?;
        let file: CacheFile = match serde_json::from_str(&text) {
            Ok(f) => f,
            Err(e) => {
                warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        if file.schema != SCHEMA || file.code_version != CODE_VERSION || file.payload.key != *key {
            warn!("ignoring stale cache file {}", path.display());
            return None;
        }
        match checksum(&file.payload) {
            Ok(sum) if sum == file.checksum => Some(file.payload),
            _ => {
                warn!("checksum mismatch in cache file {}", path.display());
                None
            }
        }
    }

    pub fn store(&self, value: &DerivedValue) -> Result<()> {
        let file = CacheFile {
            schema: SCHEMA,
            code_version: CODE_VERSION.to_string(),
            checksum: checksum(value)?,
            payload: value.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &file)?;
        tmp.flush()?;
        tmp.persist(self.path_for(&value.key)).map_err(|e| e.error)?;
        Ok(())
    }
}
