//! Ball-density tables: known upper bounds on δ(B^n) ingested from CSV.
//!
//! Format: one record per line, `n,delta_upper,source,rigor`, where
//! `delta_upper` lies in (0, 1], `source` is a free-text label, and
//! `rigor` is `rigorous` or `heuristic`. The literature values themselves
//! (e.g. the published linear-programming bounds) are user-supplied data,
//! not repository constants.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

/// One ingested δ(B^n) upper bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BallDensityRecord {
    pub n: usize,
    pub delta_upper: f64,
    pub source: String,
    pub rigorous: bool,
}

/// Parse failure with its 1-based line number.
#[derive(Debug)]
pub struct IngestError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for IngestError {}

/// Parses and validates a ball table. Duplicate (n, source) pairs are
/// rejected; an empty file yields an empty table.
pub fn parse_ball_table(text: &str) -> Result<Vec<BallDensityRecord>, IngestError> {
    let mut records = Vec::new();
    let mut seen: HashMap<(usize, String), usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(IngestError {
                line: line_no,
                message: format!(
                    "expected 4 fields `n,delta_upper,source,rigor`, got {}",
                    fields.len()
                ),
            });
        }
        let n: usize = fields[0].parse().map_err(|_| IngestError {
            line: line_no,
            message: format!("bad dimension `{}`", fields[0]),
        })?;
        if n == 0 {
            return Err(IngestError {
                line: line_no,
                message: "dimension must be >= 1".into(),
            });
        }
        let delta_upper: f64 = fields[1].parse().map_err(|_| IngestError {
            line: line_no,
            message: format!("bad density `{}`", fields[1]),
        })?;
        if !(delta_upper > 0.0 && delta_upper <= 1.0) {
            return Err(IngestError {
                line: line_no,
                message: format!("density {delta_upper} outside (0, 1]"),
            });
        }
        let source = fields[2].to_string();
        let rigorous = match fields[3] {
            "rigorous" => true,
            "heuristic" => false,
            other => {
                return Err(IngestError {
                    line: line_no,
                    message: format!("rigor must be `rigorous` or `heuristic`, got `{other}`"),
                })
            }
        };
        if let Some(first) = seen.insert((n, source.clone()), line_no) {
            return Err(IngestError {
                line: line_no,
                message: format!(
                    "duplicate record for n={n}, source `{source}` (first at line {first})"
                ),
            });
        }
        records.push(BallDensityRecord {
            n,
            delta_upper,
            source,
            rigorous,
        });
    }
    Ok(records)
}

pub fn load_ball_table(path: &Path) -> anyhow::Result<Vec<BallDensityRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read ball table {}: {e}", path.display()))?;
    parse_ball_table(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Best (smallest) ingested bound per dimension.
pub fn best_per_dimension(records: &[BallDensityRecord]) -> HashMap<usize, &BallDensityRecord> {
    let mut best: HashMap<usize, &BallDensityRecord> = HashMap::new();
    for rec in records {
        match best.get(&rec.n) {
            Some(cur) if cur.delta_upper <= rec.delta_upper => {}
            _ => {
                best.insert(rec.n, rec);
            }
        }
    }
    best
}

/// δ(B^24) = π^12/12!: the one value good enough to treat as exact, built
/// in because the 24-dimensional ball density is pinned to the Leech
/// lattice within a factor 1 + 2e-30.
pub fn builtin_delta_b24() -> f64 {
    std::f64::consts::PI.powi(12) / 479_001_600.0
}
