use nalgebra::SymmetricEigen;

use super::{c, hermiticity_defect, is_hermitian, max_abs, max_abs_diff, outer, Matrix, Vector, TOL_HERM};
use crate::error::{Error, Result};

/// Relative gap below which raw eigenvalues are merged into one spectral value.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of the Hermitian part of `m`.
///
/// Ties keep the solver's order, so identical input gives bit-identical output.
pub fn hermitian_eigen(m: &Matrix) -> (Vec<f64>, Vec<Vector>) {
    let sym = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    (values, vectors)
}

/// Distinct eigenvalues with their spectral projections, values strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    values: Vec<f64>,
    projections: Vec<Matrix>,
}

impl SpectralDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn projections(&self) -> &[Matrix] {
        &self.projections
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, |p| p.nrows())
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Matrix)> {
        self.values.iter().copied().zip(self.projections.iter())
    }

    /// `Σ_x x E(x)`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        self.iter().fold(Matrix::zeros(n, n), |acc, (x, p)| acc + p * c(x, 0.0))
    }

    /// `max |Σ_x E(x) - I|`.
    pub fn resolution_defect(&self) -> f64 {
        let n = self.dim();
        let sum = self.projections.iter().fold(Matrix::zeros(n, n), |acc, p| acc + p);
        max_abs_diff(&sum, &Matrix::identity(n, n))
    }

    /// `max |E(x)E(y) - δ_{xy}E(x)|` over all pairs.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, p) in self.projections.iter().enumerate() {
            for (j, q) in self.projections.iter().enumerate() {
                let prod = p * q;
                let defect = if i == j { max_abs_diff(&prod, p) } else { max_abs(&prod) };
                worst = worst.max(defect);
            }
        }
        worst
    }

    /// Index of the spectral value within `tol` of `x`, if any.
    pub fn index_of(&self, x: f64, tol: f64) -> Option<usize> {
        self.values.iter().position(|v| (v - x).abs() <= tol)
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Raw eigenvalues are sorted and merged whenever the gap to the previous one is at most
/// `cluster_tol * max(1, spectral radius)`. Each merged value is the mean of its group and
/// its projection is the sum of the group's eigenvector outer products. Rank > 1
/// projections are normal.
pub fn spectral_decompose(m: &Matrix, cluster_tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_square() || m.nrows() == 0 {
        return Err(Error::Shape(format!("expected a nonempty square matrix, got {:?}", m.shape())));
    }
    if !is_hermitian(m, TOL_HERM) {
        return Err(Error::NotHermitian { deviation: hermiticity_defect(m) });
    }
    let (raw_values, raw_vectors) = hermitian_eigen(m);
    let radius = raw_values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let gap = cluster_tol * radius.max(1.0);

    let n = m.nrows();
    let mut values = Vec::new();
    let mut projections = Vec::new();
    let mut start = 0;
    while start < raw_values.len() {
        let mut end = start + 1;
        while end < raw_values.len() && raw_values[end] - raw_values[end - 1] <= gap {
            end += 1;
        }
        let group = &raw_values[start..end];
        values.push(group.iter().sum::<f64>() / group.len() as f64);
        projections.push(raw_vectors[start..end].iter().fold(Matrix::zeros(n, n), |acc, v| acc + outer(v, v)));
        start = end;
    }
    Ok(SpectralDecomposition { values, projections })
}

/// A Hermitian matrix paired with its spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: Matrix,
    spectral: SpectralDecomposition,
}

impl Observable {
    pub fn new(matrix: Matrix) -> Result<Self> {
        Self::with_cluster_tol(matrix, CLUSTER_TOL)
    }

    pub fn with_cluster_tol(matrix: Matrix, cluster_tol: f64) -> Result<Self> {
        let spectral = spectral_decompose(&matrix, cluster_tol)?;
        Ok(Self { matrix, spectral })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(super::real_matrix(rows)?)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::new(super::diagonal(values))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    pub fn values(&self) -> &[f64] {
        self.spectral.values()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `E(x)` for the spectral value within `tol` of `x`; `None` if `x` is not in the spectrum.
    pub fn projection_at(&self, x: f64, tol: f64) -> Option<&Matrix> {
        self.spectral.index_of(x, tol).map(|i| &self.spectral.projections()[i])
    }

    /// Orthonormal eigenvectors grouped by spectral value, ascending.
    pub fn eigenbasis(&self) -> Vec<(f64, Vector)> {
        self.spectral.iter().flat_map(|(x, p)| super::range_basis(p, 0.5).into_iter().map(move |v| (x, v))).collect()
    }
}
