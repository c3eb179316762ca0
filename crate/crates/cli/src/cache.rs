//! On-disk cache of representation tables keyed by `(max_dim, lambda_max)`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spherelab::lattice::{CountTables, RepresentationTable};

use crate::error::CliError;

#[derive(Serialize, Deserialize)]
struct CachedTables {
    version: String,
    tables: Vec<RepresentationTable>,
}

pub fn cache_path(dir: &Path, max_dim: usize, lambda_max: u64) -> PathBuf {
    dir.join(format!("tables-d{max_dim}-l{lambda_max}.json"))
}

fn load(path: &Path) -> Option<CountTables> {
    let text = std::fs::read_to_string(path).ok()?;
    let cached: CachedTables = serde_json::from_str(&text).ok()?;
    if cached.version != spherelab::VERSION {
        return None;
    }
    CountTables::from_tables(cached.tables).ok()
}

/// Tables `r_1..r_{max_dim}` on `0..=lambda_max`, read from `dir` when a file
/// with the current version stamp exists and rebuilt (and rewritten) otherwise.
pub fn tables(
    dir: Option<&Path>,
    max_dim: usize,
    lambda_max: u64,
) -> Result<CountTables, CliError> {
    let Some(dir) = dir else {
        return Ok(CountTables::new(max_dim, lambda_max)?);
    };
    let path = cache_path(dir, max_dim, lambda_max);
    if let Some(t) = load(&path) {
        if t.max_dim() == max_dim && t.lambda_max() == lambda_max {
            return Ok(t);
        }
    }
    let tables = CountTables::new(max_dim, lambda_max)?;
    std::fs::create_dir_all(dir)?;
    let cached = CachedTables {
        version: spherelab::VERSION.to_string(),
        tables: tables.tables().to_vec(),
    };
    let text = serde_json::to_string(&cached).map_err(spherelab::Error::from)?;
    std::fs::write(&path, text)?;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_stamp() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = tables(Some(dir.path()), 3, 20).unwrap();
        let path = cache_path(dir.path(), 3, 20);
        assert!(path.exists());
        let again = tables(Some(dir.path()), 3, 20).unwrap();
        assert_eq!(again.tables(), fresh.tables());

        // a different version stamp is ignored and overwritten
        let text = std::fs::read_to_string(&path).unwrap();
        let stale = text.replacen(spherelab::VERSION, "0.0.0-old", 1);
        std::fs::write(&path, &stale).unwrap();
        assert!(load(&path).is_none());
        tables(Some(dir.path()), 3, 20).unwrap();
        assert!(load(&path).is_some());
    }

    #[test]
    fn corrupt_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(cache_path(dir.path(), 2, 5), "not json").unwrap();
        assert_eq!(tables(Some(dir.path()), 2, 5).unwrap().r(2, 5).unwrap(), 8);
    }
}
