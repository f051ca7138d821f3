//! Verification campaigns over parameter grids and their serialized reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{is_prime, Field, MAX_ORDER};
use crate::vero::{verify_field, NucleusReport, VeroError};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid scan grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Vero(#[from] VeroError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub primes: Vec<u32>,
    pub max_k: u32,
    /// Inclusive.
    pub m_range: (usize, usize),
    /// Inclusive.
    pub t_range: (u32, u32),
    pub require_q_ge_t: bool,
    /// Skip fields with more elements than this.
    #[serde(default)]
    pub max_q: Option<u32>,
}

impl ScanGrid {
    pub fn validate(&self) -> Result<(), ReportError> {
        let bad = |s: String| Err(ReportError::InvalidGrid(s));
        if self.primes.is_empty() {
            return bad("no primes given".into());
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return bad(format!("{p} is not prime"));
        }
        if self.max_k == 0 {
            return bad("max-k must be at least 1".into());
        }
        if self.m_range.0 > self.m_range.1 || self.t_range.0 > self.t_range.1 {
            return bad("empty range".into());
        }
        if self.t_range.0 == 0 {
            return bad("t must be at least 1".into());
        }
        if self.max_q == Some(0) {
            return bad("max-q must be positive".into());
        }
        // A cap within the bound already keeps every scanned field small enough.
        let capped = self.max_q.is_some_and(|cap| cap <= MAX_ORDER);
        for &p in self.primes.iter().filter(|_| !capped) {
            let q = u64::from(p).checked_pow(self.max_k);
            if q.is_none_or(|q| q > u64::from(MAX_ORDER)) {
                return bad(format!("{p}^{} exceeds the field order bound {MAX_ORDER}", self.max_k));
            }
        }
        Ok(())
    }

    /// `(p, k, m, t)` cells in grid order: primes as given, then k, m, t ascending.
    pub fn cells(&self) -> Vec<(u32, u32, usize, u32)> {
        let mut out = Vec::new();
        for &p in &self.primes {
            for k in 1..=self.max_k {
                // q grows with k, so the first field over the cap ends this prime.
                let Some(q) = p.checked_pow(k).filter(|&q| self.max_q.is_none_or(|cap| q <= cap)) else {
                    break;
                };
                for m in self.m_range.0..=self.m_range.1 {
                    for t in self.t_range.0..=self.t_range.1 {
                        if !self.require_q_ge_t || q >= t {
                            out.push((p, k, m, t));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub small_field: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub entries: Vec<NucleusReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(entries: Vec<NucleusReport>) -> Self {
        let mismatches = entries.iter().filter(|e| !e.is_consistent()).count();
        let summary = Summary {
            total: entries.len(),
            matches: entries.len() - mismatches,
            mismatches,
            small_field: entries.iter().filter(|e| e.small_field).count(),
        };
        Report { schema_version: SCHEMA_VERSION.to_string(), entries, summary }
    }

    /// 0 when every entry is consistent, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.mismatches > 0)
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Columns `p,k,q,m,t,predicted_dim,bruteforce_dim,basis_match,small_field`.
    pub fn to_csv(&self) -> Result<String, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.entries.is_empty() {
            w.write_record(["p", "k", "q", "m", "t", "predicted_dim", "bruteforce_dim", "basis_match", "small_field"])?;
        }
        for e in &self.entries {
            w.serialize(e)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&entry_line(e));
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "total {}, matches {}, mismatches {}, small-field {}\n",
            s.total, s.matches, s.mismatches, s.small_field
        ));
        out
    }
}

pub fn entry_line(e: &NucleusReport) -> String {
    let status = match (e.is_consistent(), e.small_field) {
        (true, false) => "match",
        (true, true) => "small field, lower bound holds",
        (false, _) => "MISMATCH",
    };
    format!(
        "p={} k={} q={} m={} t={}: predicted {}, brute {}, basis_match {}, {}",
        e.p, e.k, e.q, e.m, e.t, e.predicted_dim, e.bruteforce_dim, e.basis_match, status
    )
}

/// Runs every grid cell (in parallel) with the default modulus for each field.
pub fn scan(grid: &ScanGrid) -> Result<Report, ReportError> {
    grid.validate()?;
    let cells = grid.cells();
    let entries = cells
        .par_iter()
        .map(|&(p, k, m, t)| verify_field(&Field::new(p, k, None).map_err(VeroError::from)?, m, t))
        .collect::<Result<Vec<_>, VeroError>>()?;
    Ok(Report::new(entries))
}
