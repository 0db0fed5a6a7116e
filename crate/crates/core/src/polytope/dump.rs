//! Plain-text point lists: one lattice point per line as space-separated
//! integers, `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{Int, IntVector};

pub fn write_points(header: &str, points: &[IntVector]) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for p in points {
        let row: Vec<String> = p.iter().map(Int::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_points(source: &str, text: &str) -> Result<Vec<IntVector>> {
    let mut points = Vec::new();
    let mut width = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: source.to_string(),
            line: n + 1,
            message,
        };
        let p: IntVector = line
            .split_whitespace()
            .map(|t| {
                t.parse::<Int>()
                    .map_err(|_| parse_err(format!("not an integer: {t:?}")))
            })
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(p.len()),
            Some(w) if w != p.len() => {
                return Err(parse_err(format!(
                    "expected {w} coordinates, found {}",
                    p.len()
                )))
            }
            _ => {}
        }
        points.push(p);
    }
    Ok(points)
}
