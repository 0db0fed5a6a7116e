//! On-disk cache of analysis records, one JSON file per key. Writes go to a
//! temporary file in the same directory and are renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::pipeline::analyze::{analyze, AnalysisOptions, AnalysisRecord, ARTIFACT_VERSION};
use crate::weights::WeightSystem;

pub const CACHE_ENV: &str = "SPIN7_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(ws: &WeightSystem, options: &AnalysisOptions) -> String {
        let j = options
            .swapped_pairs
            .map_or_else(|| "all".to_string(), |j| j.to_string());
        format!(
            "v{ARTIFACT_VERSION}_{}_{}_{j}",
            ws.sorted().label().replace(',', "-"),
            options.convention.name()
        )
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, key: &str) -> Option<AnalysisRecord> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, record: &AnalysisRecord) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(record.to_json()?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

pub fn analyze_cached(
    ws: &WeightSystem,
    options: &AnalysisOptions,
    cache: Option<&Cache>,
) -> Result<AnalysisRecord> {
    let Some(cache) = cache else {
        return analyze(ws, options);
    };
    let key = Cache::key(ws, options);
    if let Some(hit) = cache.load(&key) {
        return Ok(hit);
    }
    let record = analyze(ws, options)?;
    cache.store(&key, &record)?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_equals_cold_run() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let ws = WeightSystem::new([1, 1, 1, 1, 4, 4]).unwrap();
        let opts = AnalysisOptions::default();
        let cold = analyze_cached(&ws, &opts, Some(&cache)).unwrap();
        assert!(cache.load(&Cache::key(&ws, &opts)).is_some());
        let warm = analyze_cached(&ws, &opts, Some(&cache)).unwrap();
        assert_eq!(cold.to_json().unwrap(), warm.to_json().unwrap());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn keys_separate_conventions_and_members() {
        let ws = WeightSystem::new([1, 1, 9, 9, 4, 4]).unwrap();
        let a = Cache::key(&ws, &AnalysisOptions::default());
        let b = Cache::key(
            &ws,
            &AnalysisOptions {
                swapped_pairs: Some(1),
                ..Default::default()
            },
        );
        let c = Cache::key(
            &ws,
            &AnalysisOptions {
                convention: crate::hodge::Convention::Uncorrected,
                ..Default::default()
            },
        );
        assert!(a != b && b != c && a != c);
        assert!(a.contains(ARTIFACT_VERSION));
    }
}
