//! Monte-Carlo sampling of measurement records.
//!
//! Every measurement draws one uniform variate `u` and picks the first outcome, in order of
//! increasing value, whose cumulative probability exceeds `u`. Probabilities at or below
//! [`PROBABILITY_FLOOR`] are treated as exactly zero and the rest renormalized, so outcomes
//! that are impossible up to rounding are never produced. Shots run sequentially from one
//! generator (see [`crate::sampling`]), so a seed fixes the whole record.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_dim, inner, Observable, StateVector};
use crate::measurement::{output_distribution, MeasuringProcess};
use crate::sampling::{seeded_rng, uniform};
use crate::tolerance::DEFAULT_VALUE_MATCH_TOL;

pub const PROBABILITY_FLOOR: f64 = 1e-14;
/// Shot count used when none is given.
pub const DEFAULT_SHOTS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Consecutive,
    Indirect,
}

/// One outcome key: `[x]` for a single measurement, `[x, y]` for consecutive ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub outcome: Vec<f64>,
    pub count: u64,
    pub frequency: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub kind: SampleKind,
    pub shots: u64,
    pub seed: u64,
    pub entries: Vec<SampleEntry>,
    pub max_abs_deviation: f64,
    pub total_variation: f64,
    /// Consecutive runs: shots whose two outcomes differ. Always 0 for indirect runs.
    pub off_diagonal_count: u64,
    /// Observed outcomes whose theoretical probability is zero.
    pub unexpected: Vec<Vec<f64>>,
}

impl SampleReport {
    fn build(kind: SampleKind, shots: u64, seed: u64, keyed: Vec<(Vec<f64>, u64, f64)>) -> Self {
        let mut max_abs_deviation = 0.0f64;
        let mut total_variation = 0.0;
        let mut off_diagonal_count = 0;
        let mut unexpected = Vec::new();
        let entries = keyed
            .into_iter()
            .map(|(outcome, count, probability)| {
                let frequency = count as f64 / shots as f64;
                let dev = (frequency - probability).abs();
                max_abs_deviation = max_abs_deviation.max(dev);
                total_variation += 0.5 * dev;
                if outcome.len() == 2 && (outcome[0] - outcome[1]).abs() > DEFAULT_VALUE_MATCH_TOL {
                    off_diagonal_count += count;
                }
                if count > 0 && probability <= PROBABILITY_FLOOR {
                    unexpected.push(outcome.clone());
                }
                SampleEntry { outcome, count, frequency, probability }
            })
            .collect();
        Self { kind, shots, seed, entries, max_abs_deviation, total_variation, off_diagonal_count, unexpected }
    }

    pub fn entry(&self, outcome: &[f64]) -> Option<&SampleEntry> {
        self.entries.iter().find(|e| e.outcome == outcome)
    }
}

/// Zeroes probabilities at or below the floor and renormalizes the rest.
fn cleaned(probabilities: &[f64]) -> Vec<f64> {
    let kept: Vec<f64> = probabilities.iter().map(|&p| if p > PROBABILITY_FLOOR { p } else { 0.0 }).collect();
    let total: f64 = kept.iter().sum();
    kept.into_iter().map(|p| p / total).collect()
}

/// Inverse-CDF draw; `u` in `[0, 1)`.
fn draw(cleaned: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    let mut last_possible = 0;
    for (i, &p) in cleaned.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        last_possible = i;
        cumulative += p;
        if u < cumulative {
            return i;
        }
    }
    last_possible
}

/// Measures `X` projectively, collapses to `E^X(x)ψ/‖E^X(x)ψ‖`, then measures `Y`.
///
/// The reference distribution is `‖E^Y(y)E^X(x)ψ‖²`.
pub fn simulate_consecutive(
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<SampleReport> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), psi.dim())?;
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let psi = psi.amplitudes();
    let collapsed: Vec<_> = x.spectral().projections().iter().map(|e| e * psi).collect();
    let first: Vec<f64> = collapsed.iter().map(|v| v.norm_squared()).collect();
    // joint[i][j] = ‖E^Y(y_j) E^X(x_i) ψ‖²
    let joint: Vec<Vec<f64>> =
        collapsed.iter().map(|v| y.spectral().projections().iter().map(|f| (f * v).norm_squared()).collect()).collect();
    let conditional: Vec<Vec<f64>> = joint
        .iter()
        .zip(&first)
        .map(|(row, &p)| {
            if p > PROBABILITY_FLOOR {
                cleaned(&row.iter().map(|q| q / p).collect::<Vec<_>>())
            } else {
                vec![0.0; row.len()]
            }
        })
        .collect();
    let first_clean = cleaned(&first);

    let mut counts = vec![vec![0u64; y.values().len()]; x.values().len()];
    let mut rng = seeded_rng(seed);
    for _ in 0..shots {
        let i = draw(&first_clean, uniform(&mut rng));
        let j = draw(&conditional[i], uniform(&mut rng));
        counts[i][j] += 1;
    }

    let mut keyed = Vec::with_capacity(x.values().len() * y.values().len());
    for (i, &xv) in x.values().iter().enumerate() {
        for (j, &yv) in y.values().iter().enumerate() {
            keyed.push((vec![xv, yv], counts[i][j], joint[i][j]));
        }
    }
    Ok(SampleReport::build(SampleKind::Consecutive, shots, seed, keyed))
}

/// Samples the meter in the evolved state `U(ψ ⊗ ξ)`; reference is the output distribution.
pub fn simulate_indirect(p: &MeasuringProcess, psi: &StateVector, shots: u64, seed: u64) -> Result<SampleReport> {
    let joint = p.initial_state(psi)?;
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let evolved = p.unitary() * joint.amplitudes();
    let meter_probs: Vec<f64> =
        p.meter().spectral().projections().iter().map(|e| inner(&evolved, &(p.lift_probe(e) * &evolved)).re).collect();
    let probs = cleaned(&meter_probs);
    let reference = output_distribution(p, psi)?;

    let mut counts = vec![0u64; probs.len()];
    let mut rng = seeded_rng(seed);
    for _ in 0..shots {
        counts[draw(&probs, uniform(&mut rng))] += 1;
    }
    let keyed = reference
        .outcomes
        .iter()
        .zip(&reference.probabilities)
        .zip(counts)
        .map(|((&x, &prob), count)| (vec![x], count, prob.max(0.0)))
        .collect();
    Ok(SampleReport::build(SampleKind::Indirect, shots, seed, keyed))
}
