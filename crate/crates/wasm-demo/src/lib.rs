//! Browser bindings. Each export takes plain text from the page and returns
//! a JSON document; errors come back as `{"error": "..."}` so the page never
//! has to catch exceptions.

use serde::Serialize;
use spin7::crepant::CrepantReport;
use spin7::hodge::Convention;
use spin7::pipeline::analyze::{analyze, AnalysisOptions};
use spin7::pipeline::filter::run_filter;
use spin7::singularity::QuotientSingularityType;
use spin7::weights::WeightSystem;
use wasm_bindgen::prelude::*;

fn to_json<T: Serialize>(result: spin7::Result<T>) -> String {
    let value = result.and_then(|v| Ok(serde_json::to_value(v)?));
    match value {
        Ok(v) => serde_json::to_string_pretty(&v).unwrap_or_default(),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

/// Runs the four-stage filter on `"a0,...,a5"`.
#[wasm_bindgen]
pub fn filter_weights(weights: &str) -> String {
    to_json(weights.parse::<WeightSystem>().map(|ws| run_filter(&ws)))
}

/// Full analysis report. An empty `swapped_pairs` scans the whole family.
#[wasm_bindgen]
pub fn analyze_weights(weights: &str, convention: &str, swapped_pairs: &str) -> String {
    to_json((|| {
        let ws: WeightSystem = weights.parse()?;
        let convention: Convention = convention.parse()?;
        let swapped_pairs = match swapped_pairs.trim() {
            "" => None,
            j => Some(
                j.parse()
                    .map_err(|_| spin7::Error::Usage(format!("bad pair count {j:?}")))?,
            ),
        };
        analyze(
            &ws,
            &AnalysisOptions {
                convention,
                swapped_pairs,
            },
        )
    })())
}

/// Crepant test for a type written `"m:b1,b2,b3,b4"`.
#[wasm_bindgen]
pub fn crepant_type(kind: &str) -> String {
    to_json(
        kind.parse::<QuotientSingularityType>()
            .map(|t| CrepantReport::new(&t)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn filter_survivor() {
        let v = parse(&filter_weights("1,1,9,9,4,4"));
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn analyze_single_member() {
        let v = parse(&analyze_weights("4,4,9,9,1,1", "standard", "1"));
        let rows = v["betti_rows"].as_array().unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["b4_plus"], 1414);
    }

    #[test]
    fn crepant_verdicts() {
        assert_eq!(parse(&crepant_type("2:1,1,1,1"))["verdict"], "no");
        assert_eq!(
            parse(&crepant_type("21:1,1,7,12"))["age_one"]
                .as_array()
                .unwrap()
                .len(),
            11
        );
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(&analyze_weights("1,2", "standard", ""))
            .get("error")
            .is_some());
        assert!(parse(&analyze_weights("1,1,9,9,4,4", "other", ""))
            .get("error")
            .is_some());
        assert!(parse(&crepant_type("0:1")).get("error").is_some());
    }
}
