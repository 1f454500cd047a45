//! Dense complex linear algebra used by every checker in the crate.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`; all operator comparisons use the
//! max-absolute-entry norm. Inner products are conjugate-linear in the first
//! argument, matching `⟨u|v⟩`.

mod spectral;
mod state;

pub use spectral::{hermitian_eigen, spectral_decompose, Observable, SpectralDecomposition, CLUSTER_TOL};
pub use state::StateVector;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

/// Default tolerance for operator identities (max-abs-entry norm).
pub const TOL_OP: f64 = 1e-9;
/// Hermiticity check, relative to `max(1, max|m_ij|)`.
pub const TOL_HERM: f64 = 1e-9;
/// Unit-norm check for state vectors; also the cutoff below which a vector counts as zero.
pub const TOL_NORM: f64 = 1e-9;
/// Acceptance window `|λ - 1|` for the intersection of two projection ranges.
pub const INTERSECTION_WINDOW: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a matrix from real row-major rows.
pub fn real_matrix(rows: &[&[f64]]) -> Result<Matrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::Shape("matrix must have at least one row and column".into()));
    }
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Shape("ragged rows".into()));
    }
    Ok(Matrix::from_fn(n_rows, n_cols, |i, j| c(rows[i][j], 0.0)))
}

pub fn diagonal(values: &[f64]) -> Matrix {
    let n = values.len();
    Matrix::from_fn(n, n, |i, j| if i == j { c(values[i], 0.0) } else { Complex64::default() })
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn vector_max_abs_diff(a: &Vector, b: &Vector) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `⟨u|v⟩`, conjugating `u`.
pub fn inner(u: &Vector, v: &Vector) -> Complex64 {
    u.dotc(v)
}

/// `⟨ψ|m|ψ⟩`.
pub fn sandwich(m: &Matrix, psi: &Vector) -> Complex64 {
    inner(psi, &(m * psi))
}

/// `|u⟩⟨v|`.
pub fn outer(u: &Vector, v: &Vector) -> Matrix {
    u * v.adjoint()
}

/// Kronecker product `a ⊗ b`, first factor outermost.
pub fn tensor(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

pub fn tensor_vectors(u: &Vector, v: &Vector) -> Vector {
    u.kronecker(v)
}

/// Partial trace over the second factor of `H ⊗ K`.
pub fn partial_trace_second(t: &Matrix, dim_h: usize, dim_k: usize) -> Result<Matrix> {
    let n = dim_h * dim_k;
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.nrows().max(t.ncols()) });
    }
    Ok(Matrix::from_fn(dim_h, dim_h, |i, j| (0..dim_k).map(|k| t[(i * dim_k + k, j * dim_k + k)]).sum()))
}

pub fn hermiticity_defect(m: &Matrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

pub fn is_hermitian(m: &Matrix, tol: f64) -> bool {
    hermiticity_defect(m) <= tol * max_abs(m).max(1.0)
}

pub fn unitarity_defect(u: &Matrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

/// Largest of the hermiticity and idempotency defects.
pub fn projection_defect(p: &Matrix) -> f64 {
    if !p.is_square() {
        return f64::INFINITY;
    }
    hermiticity_defect(p).max(max_abs_diff(&(p * p), p))
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &Matrix) -> f64 {
    let (values, _) = hermitian_eigen(m);
    values.first().copied().unwrap_or(0.0)
}

/// Largest eigenvalue magnitude of the Hermitian part of `m`.
pub fn operator_norm_hermitian(m: &Matrix) -> f64 {
    let (values, _) = hermitian_eigen(m);
    values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Orthonormal basis of the range of a projection: eigenvectors with eigenvalue near 1.
pub fn range_basis(p: &Matrix, window: f64) -> Vec<Vector> {
    let (values, vectors) = hermitian_eigen(p);
    values.into_iter().zip(vectors).filter(|(v, _)| (v - 1.0).abs() <= window).map(|(_, vec)| vec).collect()
}

pub fn projection_onto(basis: &[Vector], dim: usize) -> Matrix {
    basis.iter().fold(Matrix::zeros(dim, dim), |acc, b| acc + outer(b, b))
}

/// Orthogonal projection onto `ran(p) ∩ ran(q)`.
///
/// Computed as the eigenvalue-1 eigenspace of `p q p`; eigenvalues within `window` of 1
/// are accepted.
pub fn subspace_intersection_projection(p: &Matrix, q: &Matrix, window: f64) -> Result<Matrix> {
    if p.shape() != q.shape() {
        return Err(Error::DimensionMismatch { expected: p.nrows(), found: q.nrows() });
    }
    for m in [p, q] {
        let defect = projection_defect(m);
        if defect > TOL_OP {
            return Err(Error::NotProjection { defect });
        }
    }
    let pqp = p * q * p;
    let sym = (&pqp + pqp.adjoint()) * c(0.5, 0.0);
    Ok(projection_onto(&range_basis(&sym, window), p.nrows()))
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sz() -> Matrix {
        diagonal(&[1.0, -1.0])
    }

    #[test]
    fn tensor_of_identities() {
        assert_eq!(tensor(&identity(2), &identity(2)), identity(4));
    }

    #[test]
    fn tensor_sz_identity() {
        assert_eq!(tensor(&sz(), &identity(2)), diagonal(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn tensor_mixed_product_against_direct_multiplication() {
        let a = Matrix::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64 - 0.25));
        let b = Matrix::from_fn(2, 2, |i, j| c((i * j) as f64 - 1.0, 0.3 * i as f64));
        let u = Vector::from_vec(vec![c(0.2, 1.0), c(-0.7, 0.1)]);
        let v = Vector::from_vec(vec![c(1.5, 0.0), c(0.0, -2.0)]);
        let lhs = tensor(&a, &b) * tensor_vectors(&u, &v);
        // (a u) ⊗ (b v) written out index by index
        let au = &a * &u;
        let bv = &b * &v;
        let rhs = Vector::from_fn(4, |k, _| au[k / 2] * bv[k % 2]);
        assert!(vector_max_abs_diff(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn partial_trace_of_identity() {
        let r = partial_trace_second(&identity(4), 2, 2).unwrap();
        assert_eq!(r, identity(2) * c(2.0, 0.0));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = Matrix::from_fn(2, 2, |i, j| c(1.0 + i as f64, j as f64));
        let b = Matrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64, -(i as f64)));
        let r = partial_trace_second(&tensor(&a, &b), 2, 3).unwrap();
        assert!(max_abs_diff(&r, &(&a * b.trace())) < 1e-13);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let err = partial_trace_second(&identity(4), 3, 2).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn intersection_of_equal_projections() {
        let p = diagonal(&[1.0, 1.0, 0.0]);
        let r = subspace_intersection_projection(&p, &p, INTERSECTION_WINDOW).unwrap();
        assert!(max_abs_diff(&r, &p) < 1e-12);
    }

    #[test]
    fn intersection_of_orthogonal_projections_is_zero() {
        let p = diagonal(&[1.0, 0.0]);
        let q = diagonal(&[0.0, 1.0]);
        let r = subspace_intersection_projection(&p, &q, INTERSECTION_WINDOW).unwrap();
        assert_eq!(max_abs(&r), 0.0);
    }

    #[test]
    fn intersection_rejects_non_projection() {
        let p = diagonal(&[2.0, 0.0]);
        let err = subspace_intersection_projection(&p, &p, INTERSECTION_WINDOW).unwrap_err();
        assert!(matches!(err, Error::NotProjection { .. }));
    }

    #[test]
    fn real_matrix_rejects_ragged_rows() {
        assert!(real_matrix(&[&[1.0, 2.0], &[3.0]]).is_err());
        assert!(real_matrix(&[]).is_err());
    }
}
