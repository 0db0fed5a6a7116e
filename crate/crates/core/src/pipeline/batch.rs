//! Running the filter and the analysis over many weight systems. Work is
//! spread over a rayon pool; results always come back in input order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::analyze::{AnalysisOptions, AnalysisRecord};
use crate::pipeline::cache::{analyze_cached, Cache};
use crate::pipeline::enumerate::WeightEnumerator;
use crate::pipeline::filter::{profile_prefilter, run_filter, FilterReport};
use crate::weights::WeightSystem;

/// Runs `f` on a pool of `jobs` threads, or on the global pool for `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Usage(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSummary {
    pub source: String,
    pub examined: u64,
    /// Skipped by the cheap profile test before the staged filter ran.
    pub prefiltered: u64,
    /// First failing stage, by stage numeral, over the staged runs.
    pub failures_by_stage: BTreeMap<String, u64>,
    pub survivors: Vec<FilterReport>,
    pub warnings: Vec<String>,
}

fn summarize(
    source: String,
    examined: u64,
    prefiltered: u64,
    reports: Vec<FilterReport>,
) -> FilterSummary {
    let mut failures_by_stage = BTreeMap::new();
    let mut survivors = Vec::new();
    for r in reports {
        match r.first_failure() {
            Some(stage) => {
                *failures_by_stage
                    .entry(stage.numeral().to_string())
                    .or_insert(0) += 1
            }
            None => survivors.push(r),
        }
    }
    FilterSummary {
        source,
        examined,
        prefiltered,
        failures_by_stage,
        survivors,
        warnings: Vec::new(),
    }
}

/// Every system goes through all stages.
pub fn filter_systems(source: &str, systems: &[WeightSystem]) -> FilterSummary {
    let reports: Vec<FilterReport> = systems.par_iter().map(run_filter).collect();
    summarize(source.to_string(), systems.len() as u64, 0, reports)
}

/// The bounded enumeration, split by the two smallest weights. Tuples
/// failing the profile prefilter cannot pass stage (ii) and are only counted.
pub fn filter_enumeration(max_weight: u64) -> FilterSummary {
    let prefixes: Vec<(u64, u64)> = (1..=max_weight)
        .flat_map(|a| (a..=max_weight).map(move |b| (a, b)))
        .collect();
    let parts: Vec<(u64, u64, Vec<FilterReport>)> = prefixes
        .par_iter()
        .map(|&(a, b)| {
            let (mut examined, mut skipped, mut reports) = (0u64, 0u64, Vec::new());
            for w in WeightEnumerator::with_prefix(max_weight, a, b) {
                examined += 1;
                if profile_prefilter(&w) {
                    reports.push(run_filter(&WeightSystem::ordered(w).expect("enumerated")));
                } else {
                    skipped += 1;
                }
            }
            (examined, skipped, reports)
        })
        .collect();
    let examined = parts.iter().map(|p| p.0).sum();
    let skipped = parts.iter().map(|p| p.1).sum();
    let reports = parts.into_iter().flat_map(|p| p.2).collect();
    summarize(
        format!("enumeration up to weight {max_weight}"),
        examined,
        skipped,
        reports,
    )
}

pub fn analyze_systems(
    systems: &[WeightSystem],
    options: &AnalysisOptions,
    cache: Option<&Cache>,
) -> Result<Vec<AnalysisRecord>> {
    systems
        .par_iter()
        .map(|ws| analyze_cached(ws, options, cache))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_serial_scan() {
        let par = with_jobs(Some(2), || filter_enumeration(13)).unwrap();
        let serial = with_jobs(Some(1), || filter_enumeration(13)).unwrap();
        assert_eq!(par, serial);
        assert_eq!(par.examined, WeightEnumerator::new(13).count() as u64);
        let w: Vec<[u64; 6]> = par.survivors.iter().map(|r| r.weights).collect();
        assert_eq!(
            w,
            vec![
                [1, 1, 1, 1, 4, 4],
                [1, 1, 1, 1, 4, 8],
                [1, 1, 1, 1, 8, 12],
                [1, 1, 9, 9, 4, 4],
                [1, 1, 13, 13, 4, 8],
                [5, 5, 13, 13, 4, 4]
            ]
        );
    }

    #[test]
    fn zero_jobs_is_rejected() {
        assert!(with_jobs(Some(0), || ()).is_err());
    }
}
