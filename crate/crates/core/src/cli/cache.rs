//! JSON-lines rank cache: one entry per line, later lines win.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::botany::RankEntry;
use crate::seifert::SeifertTuple;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub tuple: SeifertTuple,
    pub rank_red: i64,
    pub rank_hat: i64,
    pub n_cutoff: i64,
    pub version: String,
}

impl CacheEntry {
    pub fn new(tuple: SeifertTuple, e: RankEntry) -> Self {
        Self {
            tuple,
            rank_red: e.rank_red,
            rank_hat: e.rank_hat,
            n_cutoff: e.n_cutoff,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn ranks(&self) -> RankEntry {
        RankEntry {
            rank_red: self.rank_red,
            rank_hat: self.rank_hat,
            n_cutoff: self.n_cutoff,
        }
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache line {line}: {source}")]
    Malformed {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Entries keyed by tuple; a missing file is an empty cache.
pub fn load(path: &Path) -> Result<HashMap<SeifertTuple, CacheEntry>, CacheError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: CacheEntry = serde_json::from_str(line)
            .map_err(|source| CacheError::Malformed { line: i + 1, source })?;
        out.insert(entry.tuple.clone(), entry);
    }
    Ok(out)
}

pub fn append(path: &Path, entries: &[CacheEntry]) -> Result<(), CacheError> {
    if entries.is_empty() {
        return Ok(());
    }
    let mut buf = String::new();
    for e in entries {
        buf.push_str(&serde_json::to_string(e).expect("cache entries serialize"));
        buf.push('\n');
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(buf.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(raw: &[i64], red: i64) -> CacheEntry {
        CacheEntry::new(
            SeifertTuple::new(raw).unwrap(),
            RankEntry { rank_red: red, rank_hat: 2 * red + 1, n_cutoff: 5 },
        )
    }

    #[test]
    fn last_write_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ranks.jsonl");
        append(&path, &[entry(&[2, 3, 7], 9), entry(&[2, 3, 11], 1)]).unwrap();
        append(&path, &[entry(&[2, 3, 7], 1)]).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded[&SeifertTuple::new(&[2, 3, 7]).unwrap()].rank_red, 1);
    }

    #[test]
    fn missing_file_is_empty_and_garbage_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("none.jsonl");
        assert!(load(&path).unwrap().is_empty());
        fs::write(&path, "{\"tuple\":[2,3,7]}\n").unwrap();
        assert!(matches!(load(&path), Err(CacheError::Malformed { line: 1, .. })));
        fs::write(&path, "{\"tuple\":[4,6,7],\"rank_red\":1,\"rank_hat\":3,\"n_cutoff\":1,\"version\":\"x\"}\n").unwrap();
        assert!(matches!(load(&path), Err(CacheError::Malformed { .. })));
    }
}
