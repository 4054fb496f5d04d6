//! Outer angles of the cross-polytope and their persistent cache.
//!
//! The outer angle at a j-dimensional face of X^n is
//!
//!   γ(n, j) = √((j+1)/π) ∫₀^∞ e^{-(j+1)x²} Φ₀(x)^{n-j-1} dx,
//!
//! with Φ₀ the error function. The integrand is evaluated in log scale,
//! g(x) = -(j+1)x² + (n-j-1)·ln Φ₀(x), which keeps the integral finite for
//! n in the hundreds where the raw integrand peak drops below e^{-700}.
//!
//! Table-scale runs perform ~10^5 of these quadratures, so values persist
//! in a text cache keyed by (n, j) and a fingerprint of the quadrature
//! parameters. Cache hits are bit-identical to fresh recomputation.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::numerics::{ln_erf_raw, log_integral_exp, LogNonNeg, QuadratureSpec};

/// (n, j) → ln γ, grouped by quadrature fingerprint.
type EntryMap = HashMap<String, HashMap<(u32, u32), f64>>;

/// ln γ(n, j) for 0 ≤ j ≤ n-1.
pub fn log_outer_angle(n: usize, j: usize, spec: &QuadratureSpec) -> Result<LogNonNeg> {
    if n == 0 {
        return Err(Error::domain("outer angle requires n >= 1"));
    }
    if j >= n {
        return Err(Error::domain(format!(
            "outer angle requires 0 <= j <= n-1, got j = {j}, n = {n}"
        )));
    }
    let quadratic = (j + 1) as f64;
    let erf_power = (n - j - 1) as f64;
    let g = move |x: f64| {
        if erf_power == 0.0 {
            -quadratic * x * x
        } else {
            -quadratic * x * x + erf_power * ln_erf_raw(x)
        }
    };
    let integral = log_integral_exp(g, 0.0, spec)?;
    let prefactor = 0.5 * (quadratic / std::f64::consts::PI).ln();
    Ok(LogNonNeg::from_ln(prefactor + integral.ln()))
}

/// In-memory map of ln γ values with optional file persistence.
///
/// Reads may proceed concurrently; writes are serialized. The file format
/// is one entry per line, `n,j,log_gamma,fingerprint`, with the log value
/// printed to 17 significant digits (exact f64 round-trip). Saving replaces
/// the file atomically via a rename.
pub struct GammaCache {
    map: RwLock<EntryMap>,
}

impl Default for GammaCache {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaCache {
    pub fn new() -> Self {
        GammaCache {
            map: RwLock::new(HashMap::new()),
        }
    }

    /// Loads a cache file produced by [`GammaCache::save`]. A missing file
    /// yields an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        let cache = GammaCache::new();
        if path.exists() {
            cache.merge_file(path)?;
        }
        Ok(cache)
    }

    /// Parses a cache file and merges its entries.
    pub fn merge_file(&self, path: &Path) -> Result<usize> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Cache(format!("read {}: {e}", path.display())))?;
        let mut count = 0;
        let mut map = self.map.write().expect("gamma cache lock poisoned");
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.splitn(4, ',').collect();
            if fields.len() != 4 {
                return Err(Error::Cache(format!(
                    "{}:{}: expected n,j,log_gamma,fingerprint",
                    path.display(),
                    idx + 1
                )));
            }
            let bad =
                |what: &str| Error::Cache(format!("{}:{}: bad {what}", path.display(), idx + 1));
            let n: u32 = fields[0].parse().map_err(|_| bad("n"))?;
            let j: u32 = fields[1].parse().map_err(|_| bad("j"))?;
            let v: f64 = fields[2].parse().map_err(|_| bad("log_gamma"))?;
            map.entry(fields[3].to_string())
                .or_default()
                .insert((n, j), v);
            count += 1;
        }
        Ok(count)
    }

    /// Writes all entries, sorted, replacing `path` atomically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let map = self.map.read().expect("gamma cache lock poisoned");
        let mut lines: Vec<String> = Vec::new();
        let mut fps: Vec<&String> = map.keys().collect();
        fps.sort();
        for fp in fps {
            let inner = &map[fp];
            let mut keys: Vec<&(u32, u32)> = inner.keys().collect();
            keys.sort();
            for key in keys {
                lines.push(format!("{},{},{:.16e},{}", key.0, key.1, inner[key], fp));
            }
        }
        let tmp = path.with_extension("tmp");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            for line in &lines {
                writeln!(f, "{line}")?;
            }
            f.sync_all()?;
            fs::rename(&tmp, path)
        };
        write().map_err(|e| Error::Cache(format!("write {}: {e}", path.display())))
    }

    pub fn len(&self) -> usize {
        let map = self.map.read().expect("gamma cache lock poisoned");
        map.values().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup(&self, n: usize, j: usize, fingerprint: &str) -> Option<f64> {
        let map = self.map.read().expect("gamma cache lock poisoned");
        map.get(fingerprint)
            .and_then(|inner| inner.get(&(n as u32, j as u32)))
            .copied()
    }

    /// Cached ln γ(n, j), computing and inserting on a miss.
    pub fn get_or_compute(&self, n: usize, j: usize, spec: &QuadratureSpec) -> Result<f64> {
        let fp = spec.fingerprint();
        if let Some(v) = self.lookup(n, j, &fp) {
            return Ok(v);
        }
        let v = log_outer_angle(n, j, spec)?.ln();
        let mut map = self.map.write().expect("gamma cache lock poisoned");
        map.entry(fp).or_default().insert((n as u32, j as u32), v);
        Ok(v)
    }
}
