//! Optional JSON cache for class-group computations, keyed by D.
//!
//! Purely an optimization for repeated CLI runs: scan and construct consult
//! it, verification never does. Writes are atomic (write to a temp file in
//! the same directory, then rename).

use std::collections::BTreeMap;
use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Cached outcome of one class-group computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CachedClassData {
    pub d: u64,
    pub h_plus: usize,
    /// Lexicographically minimal reduced form of each SL2 class, sorted.
    pub reps: Vec<[i64; 3]>,
    /// Genus partition as lists of class indices, principal genus first.
    pub genera: Vec<Vec<usize>>,
    /// GL2 classes as lists of SL2 class indices ({i} or {i, inverse}).
    pub gl2_classes: Vec<Vec<usize>>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    entries: BTreeMap<String, CachedClassData>,
}

/// In-memory map with optional file backing.
#[derive(Debug)]
pub struct ClassCache {
    map: BTreeMap<u64, CachedClassData>,
    path: Option<PathBuf>,
    dirty: bool,
}

impl ClassCache {
    pub fn in_memory() -> Self {
        ClassCache {
            map: BTreeMap::new(),
            path: None,
            dirty: false,
        }
    }

    /// Loads the cache at `path` if the file exists and parses; a missing
    /// or corrupt file just starts empty.
    pub fn at_path(path: PathBuf) -> Self {
        let map = std::fs::read_to_string(&path)
            .ok()
            .and_then(|text| serde_json::from_str::<CacheFile>(&text).ok())
            .map(|file| {
                file.entries
                    .into_values()
                    .map(|e| (e.d, e))
                    .collect::<BTreeMap<u64, CachedClassData>>()
            })
            .unwrap_or_default();
        ClassCache {
            map,
            path: Some(path),
            dirty: false,
        }
    }

    pub fn get(&self, d: u64) -> Option<&CachedClassData> {
        self.map.get(&d)
    }

    pub fn insert(&mut self, data: CachedClassData) {
        self.map.insert(data.d, data);
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Writes the cache back (temp file + rename) when backed and dirty.
    pub fn save(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile {
            entries: self
                .map
                .values()
                .map(|e| (e.d.to_string(), e.clone()))
                .collect(),
        };
        let text = serde_json::to_string_pretty(&file)?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(d: u64) -> CachedClassData {
        CachedClassData {
            d,
            h_plus: 1,
            reps: vec![[1, 1, -1]],
            genera: vec![vec![0]],
            gl2_classes: vec![vec![0]],
        }
    }

    #[test]
    fn roundtrip_through_file() {
        let dir = std::env::temp_dir().join(format!("kummer-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");

        let mut cache = ClassCache::at_path(path.clone());
        assert!(cache.is_empty());
        cache.insert(sample(5));
        cache.insert(sample(65));
        cache.save().unwrap();

        let reloaded = ClassCache::at_path(path.clone());
        assert_eq!(reloaded.len(), 2);
        assert_eq!(reloaded.get(5).unwrap().reps, vec![[1, 1, -1]]);

        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn corrupt_file_starts_empty() {
        let dir = std::env::temp_dir().join(format!("kummer-cache-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        std::fs::write(&path, "{ not json").unwrap();
        let cache = ClassCache::at_path(path);
        assert!(cache.is_empty());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
