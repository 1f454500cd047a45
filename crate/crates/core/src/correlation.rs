//! Joint distributivity, perfect correlation and equal distribution of two observables in a
//! pure state.
//!
//! Everything is built on the table of terms `⟨ψ|E^X(x) E^Y(y)|ψ⟩`:
//!
//! * jointly distributed: every term is a nonnegative real;
//! * perfectly correlated: every term with `x ≠ y` vanishes;
//! * equally distributed: `⟨ψ|E^X(x)|ψ⟩ = ⟨ψ|E^Y(x)|ψ⟩` for every `x`.
//!
//! The norm `‖Xψ - Yψ‖` ties these together: two observables are perfectly correlated
//! exactly when they are jointly distributed and `Xψ = Yψ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{check_dim, inner, sandwich, Observable, StateVector, TOL_OP};
use crate::tolerance::{align_values, Tolerances};

/// All terms `⟨ψ|E^X(x)E^Y(y)|ψ⟩`, indexed `[x][y]` in ascending spectral order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTermTable {
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub terms: Vec<Vec<Complex64>>,
}

impl JointTermTable {
    pub fn term(&self, i: usize, j: usize) -> Complex64 {
        self.terms[i][j]
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.x_values
            .iter()
            .enumerate()
            .flat_map(move |(i, &x)| self.y_values.iter().enumerate().map(move |(j, &y)| (x, y, self.terms[i][j])))
    }

    /// `Σ_y term(x_i, y)`, which equals `⟨ψ|E^X(x_i)|ψ⟩`.
    pub fn row_sum(&self, i: usize) -> Complex64 {
        self.terms[i].iter().sum()
    }

    /// `Σ_x term(x, y_j)`, which equals `⟨ψ|E^Y(y_j)|ψ⟩`.
    pub fn column_sum(&self, j: usize) -> Complex64 {
        self.terms.iter().map(|row| row[j]).sum()
    }

    pub fn total(&self) -> Complex64 {
        self.terms.iter().flatten().sum()
    }
}

/// Computes every term as written, `ψ† E^X(x) (E^Y(y) ψ)`; no thresholding.
pub fn joint_term_table(x: &Observable, y: &Observable, psi: &StateVector) -> Result<JointTermTable> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), psi.dim())?;
    let psi = psi.amplitudes();
    let y_images: Vec<_> = y.spectral().projections().iter().map(|q| q * psi).collect();
    let terms = x
        .spectral()
        .projections()
        .iter()
        .map(|p| y_images.iter().map(|qpsi| inner(psi, &(p * qpsi))).collect())
        .collect();
    Ok(JointTermTable { x_values: x.values().to_vec(), y_values: y.values().to_vec(), terms })
}

/// True iff every term has real part `>= -tol` and imaginary part of magnitude `<= tol`.
pub fn is_jointly_distributed(table: &JointTermTable, tol: f64) -> bool {
    let joint = table.iter().all(|(_, _, t)| t.re >= -tol && t.im.abs() <= tol);
    if joint {
        // ⟨ψ|E^Y E^X|ψ⟩ is the conjugate of ⟨ψ|E^X E^Y|ψ⟩; they agree once the terms are real.
        debug_assert!(table.iter().all(|(_, _, t)| (t - t.conj()).norm() <= 2.0 * tol));
    }
    joint
}

/// Cross term (`x ≠ y`) of largest modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstViolation {
    pub x: f64,
    pub y: f64,
    pub term: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationVerdict {
    pub jointly_distributed: bool,
    pub perfectly_correlated: bool,
    pub equally_distributed: bool,
    pub rms_difference: f64,
    /// `None` when every pair of spectral values matches (no cross terms exist).
    pub worst_violation: Option<WorstViolation>,
    /// `term(x, y) = δ_{xy}⟨ψ|E^X(x)|ψ⟩` for all pairs.
    pub kronecker_form: bool,
}

/// Outcome probabilities `⟨ψ|E(x)|ψ⟩` of an observable.
pub fn spectral_distribution(obs: &Observable, psi: &StateVector) -> Result<Vec<f64>> {
    check_dim(obs.dim(), psi.dim())?;
    Ok(obs.spectral().projections().iter().map(|p| sandwich(p, psi.amplitudes()).re).collect())
}

/// Whether `X` and `Y` give the same outcome distribution in `ψ`.
pub fn is_equally_distributed(x: &Observable, y: &Observable, psi: &StateVector, tol: Tolerances) -> Result<bool> {
    let px = spectral_distribution(x, psi)?;
    let py = spectral_distribution(y, psi)?;
    let aligned = align_values(x.values(), y.values(), tol.value_match)?;
    Ok(aligned.iter().all(|a| {
        let p = a.left.map_or(0.0, |i| px[i]);
        let q = a.right.map_or(0.0, |j| py[j]);
        (p - q).abs() <= tol.tol
    }))
}

/// Full verdict for the pair `(X, Y)` in `ψ`.
///
/// `perfectly_correlated` holds iff `|term(x, y)| <= tol` whenever `|x - y| > value_match`.
pub fn is_perfectly_correlated(
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    tol: Tolerances,
) -> Result<CorrelationVerdict> {
    let table = joint_term_table(x, y, psi)?;
    let jointly_distributed = is_jointly_distributed(&table, tol.tol);

    let mut worst_violation: Option<WorstViolation> = None;
    let mut kronecker_form = true;
    for (i, &xv) in table.x_values.iter().enumerate() {
        let marginal = table.row_sum(i);
        for (j, &yv) in table.y_values.iter().enumerate() {
            let t = table.term(i, j);
            if tol.same_value(xv, yv) {
                kronecker_form &= (t - marginal).norm() <= tol.tol;
            } else {
                kronecker_form &= t.norm() <= tol.tol;
                if worst_violation.is_none_or(|w| t.norm() > w.term.norm()) {
                    worst_violation = Some(WorstViolation { x: xv, y: yv, term: t });
                }
            }
        }
    }
    let perfectly_correlated = worst_violation.is_none_or(|w| w.term.norm() <= tol.tol);

    Ok(CorrelationVerdict {
        jointly_distributed,
        perfectly_correlated,
        equally_distributed: is_equally_distributed(x, y, psi, tol)?,
        rms_difference: rms_from_table(x, y, psi, &table),
        worst_violation,
        kronecker_form,
    })
}

fn rms_from_table(x: &Observable, y: &Observable, psi: &StateVector, table: &JointTermTable) -> f64 {
    let direct = (x.matrix() * psi.amplitudes() - y.matrix() * psi.amplitudes()).norm();
    debug_assert!(
        (direct * direct - table_rms_squared(table)).abs() <= rms_identity_tolerance(x, y),
        "‖Xψ-Yψ‖² disagrees with Σ (x-y)² Re term"
    );
    direct
}

fn table_rms_squared(table: &JointTermTable) -> f64 {
    table.iter().map(|(x, y, t)| (x - y) * (x - y) * t.re).sum()
}

fn rms_identity_tolerance(x: &Observable, y: &Observable) -> f64 {
    let scale = x.values().iter().chain(y.values()).fold(1.0f64, |acc, v| acc.max(v.abs()));
    TOL_OP * scale * scale
}

/// `‖Xψ - Yψ‖`.
pub fn rms_difference(x: &Observable, y: &Observable, psi: &StateVector) -> Result<f64> {
    let table = joint_term_table(x, y, psi)?;
    Ok(rms_from_table(x, y, psi, &table))
}

/// `|‖Xψ - Yψ‖² - Σ_{x,y} (x - y)² Re⟨ψ|E^X(x)E^Y(y)|ψ⟩|`; zero up to rounding for any input.
pub fn rms_identity_residual(x: &Observable, y: &Observable, psi: &StateVector) -> Result<f64> {
    let table = joint_term_table(x, y, psi)?;
    let direct = (x.matrix() * psi.amplitudes() - y.matrix() * psi.amplitudes()).norm_squared();
    Ok((direct - table_rms_squared(&table)).abs())
}

/// Whether the biconditional
/// `perfectly correlated ⟺ (jointly distributed ∧ ‖Xψ - Yψ‖ <= tol)` holds on this instance.
pub fn joint_rms_criterion_holds(x: &Observable, y: &Observable, psi: &StateVector, tol: Tolerances) -> Result<bool> {
    let v = is_perfectly_correlated(x, y, psi, tol)?;
    Ok(v.perfectly_correlated == (v.jointly_distributed && v.rms_difference <= tol.tol))
}
