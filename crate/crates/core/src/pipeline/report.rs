//! Betti number tables in Markdown, CSV or JSON. A family is printed as
//! affine functions of the swapped-pair count `k` whenever it is one.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::analyze::AnalysisRecord;
use crate::weights::RANK;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Usage(format!(
                "unknown table format {s:?}; expected md, csv or json"
            ))),
        }
    }
}

/// `base + slope * k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub base: i64,
    pub slope: i64,
}

impl Affine {
    fn fit(values: &[u64], ks: &[u64]) -> Option<Self> {
        let base = values[0] as i64;
        let slope = if values.len() > 1 {
            values[1] as i64 - base
        } else {
            0
        };
        let k0 = ks[0] as i64;
        let base = base - slope * k0;
        values
            .iter()
            .zip(ks)
            .all(|(&v, &k)| v as i64 == base + slope * k as i64)
            .then_some(Self { base, slope })
    }

    pub fn render(&self) -> String {
        match (self.base, self.slope) {
            (b, 0) => b.to_string(),
            (0, 1) => "k".into(),
            (b, 1) => format!("{b}+k"),
            (b, -1) => format!("{b}-k"),
            (b, s) if s < 0 => format!("{b}-{}k", -s),
            (b, s) => format!("{b}+{s}k"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMember {
    pub k: u64,
    pub b2: u64,
    pub b3: u64,
    pub b4_plus: u64,
    pub b4_minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub weights: [u64; RANK],
    pub k_min: u64,
    pub k_max: u64,
    pub b2: Affine,
    pub b3: Affine,
    pub b4_plus: Affine,
    pub b4_minus: Affine,
    pub members: Vec<TableMember>,
}

impl TableRow {
    /// `None` for records without Betti rows or without an affine fit.
    pub fn from_record(r: &AnalysisRecord) -> Option<Self> {
        let rows = &r.betti_rows;
        if rows.is_empty() {
            return None;
        }
        let ks: Vec<u64> = rows.iter().map(|b| b.swapped_pairs).collect();
        let col = |f: fn(&crate::pipeline::analyze::BettiRow) -> u64| {
            Affine::fit(&rows.iter().map(f).collect::<Vec<_>>(), &ks)
        };
        Some(Self {
            weights: r.weights,
            k_min: *ks.iter().min()?,
            k_max: *ks.iter().max()?,
            b2: col(|b| b.b2)?,
            b3: col(|b| b.b3)?,
            b4_plus: col(|b| b.b4_plus)?,
            b4_minus: col(|b| b.b4_minus)?,
            members: rows
                .iter()
                .map(|b| TableMember {
                    k: b.swapped_pairs,
                    b2: b.b2,
                    b3: b.b3,
                    b4_plus: b.b4_plus,
                    b4_minus: b.b4_minus,
                })
                .collect(),
        })
    }

    fn k_range(&self) -> String {
        if self.k_min == self.k_max {
            self.k_min.to_string()
        } else {
            format!("{}..{}", self.k_min, self.k_max)
        }
    }

    fn cells(&self) -> Vec<String> {
        let mut c: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        c.push(self.k_range());
        c.extend(
            [self.b2, self.b3, self.b4_plus, self.b4_minus]
                .iter()
                .map(Affine::render),
        );
        c
    }
}

const HEADER: [&str; 11] = [
    "a0", "a1", "a2", "a3", "a4", "a5", "k", "b2", "b3", "b4+", "b4-",
];

pub fn emit_table(records: &[AnalysisRecord], format: TableFormat) -> Result<String> {
    let rows: Vec<TableRow> = records.iter().filter_map(TableRow::from_record).collect();
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            let _ = writeln!(out, "| {} |", HEADER.join(" | "));
            let _ = writeln!(out, "|{}", "---:|".repeat(HEADER.len()));
            for r in &rows {
                let _ = writeln!(out, "| {} |", r.cells().join(" | "));
            }
        }
        TableFormat::Csv => {
            let _ = writeln!(out, "{}", HEADER.join(","));
            for r in &rows {
                let _ = writeln!(out, "{}", r.cells().join(","));
            }
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(&rows)?;
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_rendering() {
        assert_eq!(Affine { base: 0, slope: 1 }.render(), "k");
        assert_eq!(
            Affine {
                base: 1415,
                slope: -1
            }
            .render(),
            "1415-k"
        );
        assert_eq!(Affine { base: 6, slope: 0 }.render(), "6");
        assert_eq!(
            Affine::fit(&[10, 9, 8], &[0, 1, 2]),
            Some(Affine {
                base: 10,
                slope: -1
            })
        );
        assert_eq!(Affine::fit(&[10, 9, 9], &[0, 1, 2]), None);
    }

    #[test]
    fn empty_input_gives_header_only() {
        assert_eq!(
            emit_table(&[], TableFormat::Csv).unwrap(),
            format!("{}\n", HEADER.join(","))
        );
        assert_eq!(
            emit_table(&[], TableFormat::Markdown)
                .unwrap()
                .lines()
                .count(),
            2
        );
        assert_eq!(emit_table(&[], TableFormat::Json).unwrap().trim(), "[]");
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
