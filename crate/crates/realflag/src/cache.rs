//! On-disk cache for the `f4` build, keyed by a hash of the Jordan
//! multiplication table it is derived from.

use std::path::{Path, PathBuf};

use realflag_core::jordan_f4::{build_f4, jordan::JordanTable, NULL_CUT};
use realflag_core::LieAlgebra;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{AppError, AppResult};
use crate::format::{from_json, to_json, LieJson};

pub const CACHE_ENV: &str = "REALFLAG_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".realflag-cache";
pub const F4_FILE: &str = "f4.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub table_hash: String,
    pub solver_tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CachedAlgebra {
    pub schema: u32,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub algebra: LieJson,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Built,
    /// The file existed but was stale or unreadable.
    Rebuilt(String),
}

pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    match (explicit, std::env::var_os(CACHE_ENV)) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => PathBuf::from(p),
        (None, None) => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

/// SHA-256 of the little-endian bytes of the 27x27x27 product table.
pub fn table_hash() -> String {
    let mut h = Sha256::new();
    for v in JordanTable::new().entries() {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

fn read_cached(path: &Path, hash: &str) -> Result<LieAlgebra, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let cached: CachedAlgebra = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if cached.provenance.table_hash != hash {
        return Err("table hash changed".into());
    }
    if cached.provenance.solver_tol != NULL_CUT {
        return Err("solver tolerance changed".into());
    }
    from_json(&cached.algebra).map_err(|e| e.to_string())
}

fn write_cached(path: &Path, g: &LieAlgebra, hash: String) -> AppResult<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let cached = CachedAlgebra {
        schema: 1,
        provenance: Provenance { table_hash: hash, solver_tol: NULL_CUT },
        algebra: to_json(g)?,
    };
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    std::fs::write(&tmp, serde_json::to_vec(&cached)?).map_err(|e| AppError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| AppError::io(path, e))
}

/// Loads `f4` from `dir`, building and storing it when the cache is
/// missing or stale.
pub fn load_or_build_f4(dir: &Path) -> AppResult<(LieAlgebra, CacheOutcome)> {
    let path = dir.join(F4_FILE);
    let hash = table_hash();
    let reason = if path.exists() {
        match read_cached(&path, &hash) {
            Ok(g) => return Ok((g, CacheOutcome::Hit)),
            Err(why) => Some(why),
        }
    } else {
        None
    };
    let g = build_f4()?;
    write_cached(&path, &g, hash)?;
    Ok((g, reason.map_or(CacheOutcome::Built, CacheOutcome::Rebuilt)))
}
