//! Verdict thresholds and matching of outcome values across two spectra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default verdict threshold.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default absolute window for treating two spectral values as equal.
pub const DEFAULT_VALUE_MATCH_TOL: f64 = 1e-8;

/// Thresholds passed to every checker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Threshold on terms, vector and operator deviations.
    pub tol: f64,
    /// Two outcome values `x`, `y` are the same outcome iff `|x - y| <= value_match`.
    pub value_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, value_match: DEFAULT_VALUE_MATCH_TOL }
    }
}

impl Tolerances {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn same_value(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.value_match
    }
}

/// One entry of the union of two value lists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignedValue {
    pub value: f64,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Pairs values of `left` and `right` that lie within `window` of each other.
///
/// Every value has at most one partner; if some value has two candidates the matching is
/// refused with [`Error::AmbiguousMatch`]. Output is sorted by value (the left value when
/// both sides are present).
pub fn align_values(left: &[f64], right: &[f64], window: f64) -> Result<Vec<AlignedValue>> {
    let candidates = |x: f64, pool: &[f64]| -> Vec<usize> {
        pool.iter().enumerate().filter(|(_, &y)| (x - y).abs() <= window).map(|(i, _)| i).collect()
    };
    let ambiguous = |x: f64, idx: Vec<usize>, pool: &[f64]| Error::AmbiguousMatch {
        value: x,
        candidates: idx.into_iter().map(|i| pool[i]).collect(),
    };

    let mut out = Vec::with_capacity(left.len() + right.len());
    for (i, &x) in left.iter().enumerate() {
        let idx = candidates(x, right);
        match idx.len() {
            0 => out.push(AlignedValue { value: x, left: Some(i), right: None }),
            1 => out.push(AlignedValue { value: x, left: Some(i), right: Some(idx[0]) }),
            _ => return Err(ambiguous(x, idx, right)),
        }
    }
    for (j, &y) in right.iter().enumerate() {
        let idx = candidates(y, left);
        match idx.len() {
            0 => out.push(AlignedValue { value: y, left: None, right: Some(j) }),
            1 => {}
            _ => return Err(ambiguous(y, idx, left)),
        }
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}
