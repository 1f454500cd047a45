//! Concrete fixtures: von Neumann's measurement model and two pairs of Heisenberg operators
//! for which the naive "same value" criteria go wrong.

use serde::{Deserialize, Serialize};

use crate::correlation::{is_equally_distributed, is_perfectly_correlated, joint_term_table, spectral_distribution};
use crate::error::{Error, Result};
use crate::linalg::{
    c, check_dim, inner, max_abs, max_abs_diff, outer, real_matrix, tensor, tensor_vectors, vector_max_abs_diff,
    Matrix, Observable, StateVector, Vector, TOL_OP,
};
use crate::measurement::MeasuringProcess;
use crate::sampling::{random_state, seeded_rng};
use crate::tolerance::{align_values, Tolerances};

/// von Neumann's model for `A = Σ a_n |φ_n⟩⟨φ_n|` with probe `K = C^d`, `d = dim H`.
///
/// The probe basis is `η_m = e_{(ξ_index + m) mod d}`, the probe starts in `ξ = η_0`, the
/// pointer states are `ξ_n = η_n` and the meter is `M = Σ a_n |ξ_n⟩⟨ξ_n|`. The interaction is
/// the controlled cyclic shift `U(φ_n ⊗ η_m) = φ_n ⊗ η_{(m + n) mod d}`, which satisfies
/// `U(φ_n ⊗ ξ) = φ_n ⊗ ξ_n` and is a permutation of the product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VonNeumannModel {
    pub observable: Observable,
    pub eigenbasis: Vec<Vector>,
    pub eigenvalues: Vec<f64>,
    pub probe_basis: Vec<Vector>,
    pub process: MeasuringProcess,
}

impl VonNeumannModel {
    /// `max_n max|U(φ_n ⊗ ξ) - φ_n ⊗ ξ_n|`.
    pub fn defining_relation_defect(&self) -> f64 {
        let xi = self.process.probe_state().amplitudes();
        self.eigenbasis
            .iter()
            .zip(&self.probe_basis)
            .map(|(phi, xi_n)| {
                let lhs = self.process.unitary() * tensor_vectors(phi, xi);
                vector_max_abs_diff(&lhs, &tensor_vectors(phi, xi_n))
            })
            .fold(0.0, f64::max)
    }
}

/// Builds the model from an ordered orthonormal eigenbasis of `A`.
///
/// Repeated eigenvalues are allowed; the meter then has the same multiplicities.
pub fn build_von_neumann(a: &Observable, eigenbasis: &[Vector], xi_index: usize) -> Result<VonNeumannModel> {
    let d = a.dim();
    if eigenbasis.len() != d {
        return Err(Error::NotEigenbasis(format!("expected {d} vectors, got {}", eigenbasis.len())));
    }
    if xi_index >= d {
        return Err(Error::NotEigenbasis(format!("probe index {xi_index} out of range for dimension {d}")));
    }
    let scale = max_abs(a.matrix()).max(1.0);
    let mut eigenvalues = Vec::with_capacity(d);
    for (n, phi) in eigenbasis.iter().enumerate() {
        check_dim(d, phi.len())?;
        for (m, other) in eigenbasis.iter().enumerate() {
            let expected = if n == m { 1.0 } else { 0.0 };
            if (inner(phi, other) - c(expected, 0.0)).norm() > TOL_OP {
                return Err(Error::NotEigenbasis(format!("vectors {n} and {m} are not orthonormal")));
            }
        }
        let value = inner(phi, &(a.matrix() * phi)).re;
        if vector_max_abs_diff(&(a.matrix() * phi), &(phi * c(value, 0.0))) > TOL_OP * scale {
            return Err(Error::NotEigenbasis(format!("vector {n} is not an eigenvector")));
        }
        eigenvalues.push(value);
    }

    let probe_basis: Vec<Vector> = (0..d).map(|m| StateVector::basis(d, (xi_index + m) % d).into_inner()).collect();
    let mut unitary = Matrix::zeros(d * d, d * d);
    for (n, phi) in eigenbasis.iter().enumerate() {
        for (m, eta) in probe_basis.iter().enumerate() {
            let from = tensor_vectors(phi, eta);
            let to = tensor_vectors(phi, &probe_basis[(m + n) % d]);
            unitary += outer(&to, &from);
        }
    }
    let meter = eigenvalues
        .iter()
        .zip(&probe_basis)
        .fold(Matrix::zeros(d, d), |acc, (&value, xi_n)| acc + outer(xi_n, xi_n) * c(value, 0.0));
    let xi = StateVector::new(probe_basis[0].clone())?;
    let process = MeasuringProcess::new(xi, unitary, Observable::new(meter)?)?;
    Ok(VonNeumannModel { observable: a.clone(), eigenbasis: eigenbasis.to_vec(), eigenvalues, probe_basis, process })
}

/// [`build_von_neumann`] with the eigenbasis taken from the spectral decomposition of `A`
/// (ascending eigenvalues) and `ξ = e_0`.
pub fn von_neumann_for(a: &Observable) -> Result<VonNeumannModel> {
    let basis: Vec<Vector> = a.eigenbasis().into_iter().map(|(_, v)| v).collect();
    build_von_neumann(a, &basis, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VonNeumannReport {
    /// `A ⊗ I = U†(A ⊗ I)U = U†(I ⊗ M)U` on `H ⊗ span{ξ}`
    pub operator_identity: bool,
    /// `A ⊗ I` and `U†(I ⊗ M)U` perfectly correlated in every `ψ ⊗ ξ` checked
    pub value_reproducing: bool,
    /// `U†(A ⊗ I)U` and `U†(I ⊗ M)U` perfectly correlated in every `ψ ⊗ ξ` checked
    pub repeatability: bool,
    pub states_checked: usize,
    pub seed: u64,
}

impl VonNeumannReport {
    pub fn all_pass(&self) -> bool {
        self.operator_identity && self.value_reproducing && self.repeatability
    }
}

/// Checks the model on `samples` seeded random system states.
pub fn verify_von_neumann(m: &VonNeumannModel, samples: usize, seed: u64, tol: Tolerances) -> Result<VonNeumannReport> {
    let mut rng = seeded_rng(seed);
    let states: Vec<StateVector> = (0..samples).map(|_| random_state(m.observable.dim(), &mut rng)).collect();
    let mut report = verify_von_neumann_on(m, &states, tol)?;
    report.seed = seed;
    Ok(report)
}

/// Checks the model on the given system states.
pub fn verify_von_neumann_on(m: &VonNeumannModel, states: &[StateVector], tol: Tolerances) -> Result<VonNeumannReport> {
    let p = &m.process;
    let xi = p.probe_state().amplitudes();
    let on_probe_state = p.lift_probe(&outer(xi, xi));

    let measured_before = p.lift_system(m.observable.matrix());
    let measured_after = p.heisenberg(&measured_before);
    let meter_after = p.heisenberg(&p.lift_probe(p.meter().matrix()));

    let restricted = |op: &Matrix| op * &on_probe_state;
    let operator_identity = max_abs_diff(&restricted(&measured_before), &restricted(&measured_after)) <= tol.tol
        && max_abs_diff(&restricted(&measured_before), &restricted(&meter_after)) <= tol.tol;

    let hermitian = |m: &Matrix| Observable::new((m + m.adjoint()) * c(0.5, 0.0));
    let before = hermitian(&measured_before)?;
    let after = hermitian(&measured_after)?;
    let meter = hermitian(&meter_after)?;

    let mut value_reproducing = true;
    let mut repeatability = true;
    for psi in states {
        let joint = p.initial_state(psi)?;
        value_reproducing &= is_perfectly_correlated(&before, &meter, &joint, tol)?.perfectly_correlated;
        repeatability &= is_perfectly_correlated(&after, &meter, &joint, tol)?.perfectly_correlated;
    }
    Ok(VonNeumannReport { operator_identity, value_reproducing, repeatability, states_checked: states.len(), seed: 0 })
}

/// `⟨ψ|X^k|ψ⟩` for `k = 1, 2, 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub x: [f64; 3],
    pub y: [f64; 3],
}

/// Two Heisenberg operators `X = A(t₁)`, `Y = A(t₂) = U†XU` and a state.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergPairFixture {
    pub x: Observable,
    pub y: Observable,
    pub evolution: Matrix,
    pub psi: StateVector,
    pub moments: MomentTable,
}

impl HeisenbergPairFixture {
    pub fn new(x: Observable, y: Observable, evolution: Matrix, psi: StateVector) -> Result<Self> {
        check_dim(x.dim(), y.dim())?;
        check_dim(x.dim(), evolution.nrows())?;
        check_dim(x.dim(), psi.dim())?;
        let moments = MomentTable { x: moments(x.matrix(), &psi), y: moments(y.matrix(), &psi) };
        Ok(Self { x, y, evolution, psi, moments })
    }

    /// `max|U†XU - Y|`.
    pub fn heisenberg_residual(&self) -> f64 {
        max_abs_diff(&(self.evolution.adjoint() * self.x.matrix() * &self.evolution), self.y.matrix())
    }
}

fn moments(m: &Matrix, psi: &StateVector) -> [f64; 3] {
    let v1 = m * psi.amplitudes();
    let v2 = m * &v1;
    let v3 = m * &v2;
    [inner(psi.amplitudes(), &v1).re, inner(psi.amplitudes(), &v2).re, inner(psi.amplitudes(), &v3).re]
}

/// The 4×4 pair with `A(t₁)ψ = A(t₂)ψ` whose third moments nevertheless differ (4 versus 3).
pub fn ozawa_counterexample() -> HeisenbergPairFixture {
    let x = real_matrix(&[&[1.0, 1.0, 0.0, 0.0], &[1.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 1.0], &[0.0, 0.0, 1.0, 0.0]]);
    let y = real_matrix(&[&[1.0, 1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 1.0], &[0.0, 0.0, 1.0, 1.0]]);
    let u = real_matrix(&[&[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 0.0, 1.0], &[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]]);
    let (Ok(x), Ok(y), Ok(u)) = (x, y, u) else { unreachable!("literal 4x4 matrices") };
    let fixture = HeisenbergPairFixture::new(
        Observable::new(x).expect("symmetric"),
        Observable::new(y).expect("symmetric"),
        u,
        StateVector::basis(4, 0),
    )
    .expect("consistent dimensions");
    assert!(fixture.heisenberg_residual() == 0.0, "A(t2) must equal U†A(t1)U");
    fixture
}

/// Swap on `C^d ⊗ C^d`.
pub fn swap(d: usize) -> Matrix {
    Matrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = (col / d, col % d);
        if row == j * d + i {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `X = B ⊗ I`, `Y = I ⊗ B` in `ψ = φ ⊗ φ`, related by the swap.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductStateExample {
    pub fixture: HeisenbergPairFixture,
    pub equally_distributed: bool,
    /// `term(x, y) = ⟨φ|E^B(x)|φ⟩⟨φ|E^B(y)|φ⟩` for all `x, y`
    pub statistically_independent: bool,
    pub independence_defect: f64,
}

pub fn product_state_example(b: &Observable, phi: &StateVector) -> Result<ProductStateExample> {
    check_dim(b.dim(), phi.dim())?;
    let d = b.dim();
    let id = Matrix::identity(d, d);
    let fixture = HeisenbergPairFixture::new(
        Observable::new(tensor(b.matrix(), &id))?,
        Observable::new(tensor(&id, b.matrix()))?,
        swap(d),
        phi.tensor(phi),
    )?;
    let tol = Tolerances::default();
    let equally_distributed = is_equally_distributed(&fixture.x, &fixture.y, &fixture.psi, tol)?;

    let marginal = spectral_distribution(b, phi)?;
    let table = joint_term_table(&fixture.x, &fixture.y, &fixture.psi)?;
    let rows = align_values(&table.x_values, b.values(), tol.value_match)?;
    let cols = align_values(&table.y_values, b.values(), tol.value_match)?;
    let prob = |a: &crate::tolerance::AlignedValue| a.right.map_or(0.0, |k| marginal[k]);
    let mut independence_defect = 0.0f64;
    for r in rows.iter().filter(|r| r.left.is_some()) {
        for col in cols.iter().filter(|col| col.left.is_some()) {
            let term = table.term(r.left.unwrap_or(0), col.left.unwrap_or(0));
            independence_defect = independence_defect.max((term - c(prob(r) * prob(col), 0.0)).norm());
        }
    }
    Ok(ProductStateExample {
        fixture,
        equally_distributed,
        statistically_independent: independence_defect <= tol.tol,
        independence_defect,
    })
}
