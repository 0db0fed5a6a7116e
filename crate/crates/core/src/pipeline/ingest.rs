//! Reading weight lists: six whitespace-separated positive integers per
//! line, `#` comments and blank lines ignored.

use std::path::Path;

use crate::error::{Error, Result};
use crate::weights::{WeightSystem, RANK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IngestMode {
    /// The first malformed line aborts the read.
    #[default]
    Strict,
    /// Malformed lines are skipped and reported as warnings.
    Lenient,
}

#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub systems: Vec<WeightSystem>,
    pub warnings: Vec<String>,
}

/// Parses one line of whitespace- or comma-separated weights; `Ok(None)`
/// for comments and blank lines. A common
/// factor of the weights is divided out.
pub fn parse_weight_line(line: &str) -> std::result::Result<Option<WeightSystem>, String> {
    let body = line.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    if fields.len() != RANK {
        return Err(format!("expected {RANK} weights, found {}", fields.len()));
    }
    let mut w = [0u64; RANK];
    for (slot, f) in w.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| format!("not a positive integer: {f:?}"))?;
    }
    WeightSystem::normalized(w)
        .map(Some)
        .map_err(|e| e.to_string())
}

pub fn parse_weight_list(source: &str, text: &str, mode: IngestMode) -> Result<Ingested> {
    let mut out = Ingested::default();
    for (n, line) in text.lines().enumerate() {
        match parse_weight_line(line) {
            Ok(Some(ws)) => out.systems.push(ws),
            Ok(None) => {}
            Err(message) => match mode {
                IngestMode::Strict => {
                    return Err(Error::Parse {
                        path: source.into(),
                        line: n + 1,
                        message,
                    })
                }
                IngestMode::Lenient => out.warnings.push(format!("{source}:{}: {message}", n + 1)),
            },
        }
    }
    Ok(out)
}

pub fn ingest_weight_list(path: &Path, mode: IngestMode) -> Result<Ingested> {
    let text = std::fs::read_to_string(path)?;
    parse_weight_list(&path.display().to_string(), &text, mode)
}
