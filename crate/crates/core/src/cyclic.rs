//! Cyclic subspaces and the structural characterizations of perfectly correlating states.
//!
//! The cyclic subspace `C(X, ψ)` is the span of `ψ, Xψ, X²ψ, …`. In finite dimension it is
//! spanned by the nonzero vectors `E^X(x)ψ`, one eigenvector per spectral value, so it comes
//! with a ready-made eigenbasis of `X`.
//!
//! For a pair `X, Y` and a state `ψ` with `P` the projection onto `C(X, ψ)`, the following
//! are equivalent, and [`correlation_conditions`] checks each one independently:
//!
//! 1. `X` and `Y` are perfectly correlated in `ψ`;
//! 2. they are perfectly correlated in every unit vector of `C(X, ψ)`;
//! 3. `f(X)ψ = f(Y)ψ` for every function `f`;
//! 4. `f(X)P = f(Y)P` for every function `f`;
//! 5. `XP = YP`.
//!
//! Two further characterizations are available: `ψ` is a superposition of common
//! eigenvectors with common eigenvalues ([`common_eigenstate_decomposition`]), and `X`, `Y`
//! are equally distributed in every unit vector of `C(X, ψ)` ([`equal_distribution_certificate`]).

use serde::{Deserialize, Serialize};

use crate::correlation::is_perfectly_correlated;
use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, inner, max_abs_diff, projection_onto, subspace_intersection_projection, vector_max_abs_diff, Matrix,
    Observable, StateVector, Vector, INTERSECTION_WINDOW, TOL_NORM,
};
pub use crate::sampling::DEFAULT_SEED;
use crate::sampling::{random_unit_in_span, seeded_rng};
use crate::tolerance::{align_values, Tolerances};

/// Default number of random unit vectors drawn from `C(X, ψ)` for the spot-check.
pub const DEFAULT_SPHERE_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSubspace {
    basis: Vec<Vector>,
    eigenvalues: Vec<f64>,
    projection: Matrix,
}

impl CyclicSubspace {
    /// Orthonormal basis; each vector is an eigenvector of the generating observable.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Eigenvalue of the generating observable for each basis vector.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn random_state(&self, rng: &mut crate::sampling::SeededRng) -> StateVector {
        random_unit_in_span(&self.basis, rng)
    }
}

/// Builds `C(X, ψ)` from the nonzero components `E^X(x)ψ`, orthonormalized in ascending order
/// of `x`. Components with norm `<= TOL_NORM` are dropped.
pub fn cyclic_subspace(x: &Observable, psi: &StateVector) -> Result<CyclicSubspace> {
    check_dim(x.dim(), psi.dim())?;
    let mut basis: Vec<Vector> = Vec::new();
    let mut eigenvalues = Vec::new();
    for (value, p) in x.spectral().iter() {
        let mut v = p * psi.amplitudes();
        if v.norm() <= TOL_NORM {
            continue;
        }
        for b in &basis {
            let overlap = inner(b, &v);
            v -= b * overlap;
        }
        let norm = v.norm();
        if norm > TOL_NORM {
            basis.push(v.unscale(norm));
            eigenvalues.push(value);
        }
    }
    let projection = projection_onto(&basis, x.dim());
    Ok(CyclicSubspace { basis, eigenvalues, projection })
}

/// The five equivalent conditions, each decided by its own computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationConditions {
    /// perfectly correlated in ψ
    pub cond_i: bool,
    /// perfectly correlated in every sampled unit vector of C(X, ψ)
    pub cond_ii: bool,
    /// E^X(x)ψ = E^Y(x)ψ for all x
    pub cond_iii: bool,
    /// E^X(x)P = E^Y(x)P for all x
    pub cond_iv: bool,
    /// XP = YP
    pub cond_v: bool,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl CorrelationConditions {
    pub fn all_agree(&self) -> bool {
        let c = [self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv, self.cond_v];
        c.iter().all(|&b| b == c[0])
    }

    pub fn all_true(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii && self.cond_iv && self.cond_v
    }
}

/// Evaluates every condition for `(X, Y, ψ)`.
///
/// Condition (ii) is a seeded spot-check over `samples` random unit vectors of `C(X, ψ)`;
/// conditions (iii) and (iv) quantify over indicator functions of the union of both spectra,
/// which generate all functions on a finite spectrum.
pub fn correlation_conditions(
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    tol: Tolerances,
    samples: usize,
    seed: u64,
) -> Result<CorrelationConditions> {
    check_dim(x.dim(), y.dim())?;
    let cyc = cyclic_subspace(x, psi)?;
    let p = cyc.projection();
    let psi_v = psi.amplitudes();

    let cond_i = is_perfectly_correlated(x, y, psi, tol)?.perfectly_correlated;

    let mut rng = seeded_rng(seed);
    let mut cond_ii = true;
    for _ in 0..samples {
        let phi = cyc.random_state(&mut rng);
        cond_ii &= is_perfectly_correlated(x, y, &phi, tol)?.perfectly_correlated;
    }

    let n = x.dim();
    let aligned = align_values(x.values(), y.values(), tol.value_match)?;
    let proj = |obs: &Observable, idx: Option<usize>| -> Matrix {
        idx.map_or_else(|| Matrix::zeros(n, n), |i| obs.spectral().projections()[i].clone())
    };
    let mut cond_iii = true;
    let mut cond_iv = true;
    for a in &aligned {
        let ex = proj(x, a.left);
        let ey = proj(y, a.right);
        cond_iii &= vector_max_abs_diff(&(&ex * psi_v), &(&ey * psi_v)) <= tol.tol;
        cond_iv &= max_abs_diff(&(&ex * p), &(&ey * p)) <= tol.tol;
    }

    let cond_v = max_abs_diff(&(x.matrix() * p), &(y.matrix() * p)) <= tol.tol;

    Ok(CorrelationConditions { cond_i, cond_ii, cond_iii, cond_iv, cond_v, tol: tol.tol, seed, samples })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommonComponent {
    pub value: f64,
    pub vector: Vector,
}

/// `ψ = Σ_x Q(x)ψ` with `Q(x)` the projection onto `ran E^X(x) ∩ ran E^Y(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonEigenDecomposition {
    pub components: Vec<CommonComponent>,
    pub residual: f64,
}

/// Splits `ψ` into common eigenvectors of `X` and `Y` with common eigenvalues.
///
/// Returns [`Error::NotDecomposable`] when `‖Σ_x Q(x)ψ - ψ‖ > tol`. Zero components are
/// omitted.
pub fn common_eigenstate_decomposition(
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    tol: Tolerances,
) -> Result<CommonEigenDecomposition> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), psi.dim())?;
    let psi_v = psi.amplitudes();
    let mut components = Vec::new();
    let mut sum = Vector::zeros(psi.dim());
    for a in align_values(x.values(), y.values(), tol.value_match)? {
        let (Some(i), Some(j)) = (a.left, a.right) else { continue };
        let q = subspace_intersection_projection(
            &x.spectral().projections()[i],
            &y.spectral().projections()[j],
            INTERSECTION_WINDOW,
        )?;
        let component = q * psi_v;
        if component.norm() > TOL_NORM {
            sum += &component;
            components.push(CommonComponent { value: a.value, vector: component });
        }
    }
    let residual = (sum - psi_v).norm();
    if residual > tol.tol {
        return Err(Error::NotDecomposable { residual });
    }
    Ok(CommonEigenDecomposition { components, residual })
}

/// Finite certificate that `X` and `Y` are equally distributed on all of `C(X, ψ)`:
/// `Y b = x_b b` for every vector `b` of the eigenbasis of `C(X, ψ)`.
pub fn equal_distribution_certificate(
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    tol: Tolerances,
) -> Result<bool> {
    check_dim(x.dim(), y.dim())?;
    let cyc = cyclic_subspace(x, psi)?;
    Ok(cyc.basis().iter().zip(cyc.eigenvalues()).all(|(b, &value)| {
        let yb = y.matrix() * b;
        vector_max_abs_diff(&yb, &(b * crate::linalg::c(value, 0.0))) <= tol.tol
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, diagonal, real_matrix, tensor};
    use crate::models::{ozawa_counterexample, product_state_example};

    fn bell() -> (Observable, Observable, StateVector) {
        let z = diagonal(&[1.0, -1.0]);
        let i = Matrix::identity(2, 2);
        let s = 0.5f64.sqrt();
        (
            Observable::new(tensor(&z, &i)).unwrap(),
            Observable::new(tensor(&i, &z)).unwrap(),
            StateVector::from_real(&[s, 0.0, 0.0, s]).unwrap(),
        )
    }

    #[test]
    fn eigenstate_spans_one_dimension() {
        let x = Observable::diagonal(&[1.0, -1.0]).unwrap();
        let cyc = cyclic_subspace(&x, &StateVector::basis(2, 0)).unwrap();
        assert_eq!(cyc.dim(), 1);
        assert!((cyc.basis()[0][0] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sigma_x_on_basis_state_spans_two_dimensions() {
        let x = Observable::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let psi = StateVector::basis(2, 0);
        let cyc = cyclic_subspace(&x, &psi).unwrap();
        // Gram-Schmidt on {ψ, Xψ} = {e0, e1} spans everything
        assert_eq!(cyc.dim(), 2);
        assert!(max_abs_diff(cyc.projection(), &Matrix::identity(2, 2)) < 1e-12);
    }

    #[test]
    fn nondegenerate_diagonal_full_support() {
        let x = Observable::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let psi = StateVector::from_real(&[0.6, 0.48, 0.64]).unwrap();
        assert_eq!(cyclic_subspace(&x, &psi).unwrap().dim(), 3);
    }

    #[test]
    fn cyclic_projection_commutes_with_generator() {
        let x = real_matrix(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 0.0], &[0.0, 0.0, 5.0]]).unwrap();
        let x = Observable::new(x).unwrap();
        let psi = StateVector::basis(3, 0);
        let cyc = cyclic_subspace(&x, &psi).unwrap();
        let p = cyc.projection();
        assert_eq!(cyc.dim(), 2);
        assert!(max_abs_diff(&(x.matrix() * p), &(p * x.matrix())) < 1e-12);
        assert!(crate::linalg::vector_max_abs_diff(&(p * psi.amplitudes()), psi.amplitudes()) < 1e-12);
    }

    #[test]
    fn bell_all_conditions_true() {
        let (x, y, psi) = bell();
        let r = correlation_conditions(&x, &y, &psi, Tolerances::default(), 32, 7).unwrap();
        assert!(r.all_true(), "{r:?}");
        assert!(equal_distribution_certificate(&x, &y, &psi, Tolerances::default()).unwrap());
        let d = common_eigenstate_decomposition(&x, &y, &psi, Tolerances::default()).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].value, -1.0);
        assert_eq!(d.components[1].value, 1.0);
        for comp in &d.components {
            assert!((comp.vector.norm_squared() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn counterexample_all_conditions_false() {
        let f = ozawa_counterexample();
        let r = correlation_conditions(&f.x, &f.y, &f.psi, Tolerances::default(), 32, 7).unwrap();
        assert!(!r.cond_i && !r.cond_ii && !r.cond_iii && !r.cond_iv && !r.cond_v, "{r:?}");
        // C(A(t1), e1) = span{e1, e2}
        assert_eq!(cyclic_subspace(&f.x, &f.psi).unwrap().dim(), 2);
        assert!(matches!(
            common_eigenstate_decomposition(&f.x, &f.y, &f.psi, Tolerances::default()),
            Err(Error::NotDecomposable { .. })
        ));
        assert!(!equal_distribution_certificate(&f.x, &f.y, &f.psi, Tolerances::default()).unwrap());
    }

    #[test]
    fn identical_observables() {
        let x = Observable::from_real_rows(&[&[1.0, 2.0], &[2.0, -1.0]]).unwrap();
        let psi = StateVector::from_real(&[0.8, 0.6]).unwrap();
        let r = correlation_conditions(&x, &x, &psi, Tolerances::default(), 8, 1).unwrap();
        assert!(r.all_true());
        assert!(equal_distribution_certificate(&x, &x, &psi, Tolerances::default()).unwrap());
    }

    #[test]
    fn single_component_decomposition() {
        let x = Observable::diagonal(&[1.0, -1.0]).unwrap();
        let psi = StateVector::basis(2, 0);
        let d = common_eigenstate_decomposition(&x, &x, &psi, Tolerances::default()).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].value, 1.0);
        assert!(crate::linalg::vector_max_abs_diff(&d.components[0].vector, psi.amplitudes()) < 1e-15);
    }

    #[test]
    fn product_state_non_eigenstate_fails_certificate() {
        let b = Observable::diagonal(&[1.0, -1.0]).unwrap();
        let s = 0.5f64.sqrt();
        let ex = product_state_example(&b, &StateVector::from_real(&[s, s]).unwrap()).unwrap();
        let f = &ex.fixture;
        assert!(!equal_distribution_certificate(&f.x, &f.y, &f.psi, Tolerances::default()).unwrap());
    }
}
