//! Indirect measuring processes, their POVMs, and the precise-measurement checks.
//!
//! A process `(K, ξ, U, M)` couples the system `H` to a probe `K` prepared in `ξ`, lets them
//! interact through the unitary `U` on `H ⊗ K` (system first), then reads the meter `M`.
//! In the Heisenberg picture the measured observable before the interaction is `A ⊗ I` and
//! the meter after it is `U†(I ⊗ M)U`. The apparatus precisely measures `A` in `ψ` when those
//! two are perfectly correlated in `ψ ⊗ ξ`, and that depends only on the POVM
//!
//! ```text
//! Π(x) = Tr_K[ U†(I ⊗ E^M(x))U (I ⊗ |ξ⟩⟨ξ|) ].
//! ```

use serde::{Deserialize, Serialize};

use crate::correlation::{is_perfectly_correlated, spectral_distribution};
use crate::cyclic::cyclic_subspace;
use crate::error::{Error, Result};
use crate::linalg::{
    c, check_dim, identity, inner, max_abs_diff, min_eigenvalue, operator_norm_hermitian, outer, partial_trace_second,
    sandwich, tensor, unitarity_defect, Matrix, Observable, StateVector, TOL_OP,
};
use crate::sampling::seeded_rng;
use crate::tolerance::{align_values, Tolerances};

/// Positivity tolerance for POVM effects.
pub const TOL_PSD: f64 = 1e-9;

/// The quadruple `(K, ξ, U, M)` with `K = C^dim_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuringProcess {
    dim_h: usize,
    dim_k: usize,
    probe_state: StateVector,
    unitary: Matrix,
    meter: Observable,
}

impl MeasuringProcess {
    /// Validates dimensions and unitarity (`max |U†U - I| <= TOL_OP`).
    pub fn new(probe_state: StateVector, unitary: Matrix, meter: Observable) -> Result<Self> {
        let dim_k = meter.dim();
        check_dim(dim_k, probe_state.dim())?;
        if !unitary.is_square() || !unitary.nrows().is_multiple_of(dim_k) || unitary.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: dim_k, found: unitary.nrows() });
        }
        let defect = unitarity_defect(&unitary);
        if defect > TOL_OP {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { dim_h: unitary.nrows() / dim_k, dim_k, probe_state, unitary, meter })
    }

    /// Process with `U = I`: the probe never sees the system.
    pub fn trivial(dim_h: usize, probe_state: StateVector, meter: Observable) -> Result<Self> {
        let n = dim_h * meter.dim();
        Self::new(probe_state, identity(n), meter)
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn probe_state(&self) -> &StateVector {
        &self.probe_state
    }

    pub fn unitary(&self) -> &Matrix {
        &self.unitary
    }

    pub fn meter(&self) -> &Observable {
        &self.meter
    }

    /// Same probe and meter, different interaction.
    pub fn with_unitary(&self, unitary: Matrix) -> Result<Self> {
        Self::new(self.probe_state.clone(), unitary, self.meter.clone())
    }

    /// `A ⊗ I` on `H ⊗ K`.
    pub fn lift_system(&self, a: &Matrix) -> Matrix {
        tensor(a, &identity(self.dim_k))
    }

    /// `I ⊗ B` on `H ⊗ K`.
    pub fn lift_probe(&self, b: &Matrix) -> Matrix {
        tensor(&identity(self.dim_h), b)
    }

    /// `U† O U`.
    pub fn heisenberg(&self, op: &Matrix) -> Matrix {
        self.unitary.adjoint() * op * &self.unitary
    }

    /// `ψ ⊗ ξ`.
    pub fn initial_state(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim_h, psi.dim())?;
        Ok(psi.tensor(&self.probe_state))
    }
}

/// Meter after the interaction, `U†(I ⊗ M)U`, with its spectral decomposition recomputed.
pub fn heisenberg_meter(p: &MeasuringProcess) -> Result<Observable> {
    let m = p.heisenberg(&p.lift_probe(p.meter().matrix()));
    Observable::new((&m + m.adjoint()) * c(0.5, 0.0))
}

/// Outcome values with one positive effect each.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    outcomes: Vec<f64>,
    effects: Vec<Matrix>,
}

impl Povm {
    /// Checks positivity (`min eigenvalue >= -TOL_PSD`) and completeness (`Σ Π = I` within `TOL_OP`).
    pub fn new(outcomes: Vec<f64>, effects: Vec<Matrix>) -> Result<Self> {
        if outcomes.len() != effects.len() || effects.is_empty() {
            return Err(Error::Shape("one effect per outcome required".into()));
        }
        let povm = Self { outcomes, effects };
        let defect = povm.completeness_defect();
        if defect > TOL_OP {
            return Err(Error::NotPovm { defect });
        }
        let lowest = povm.min_eigenvalue();
        if lowest < -TOL_PSD {
            return Err(Error::NotPovm { defect: -lowest });
        }
        Ok(povm)
    }

    /// POVM made of spectral projections.
    pub fn from_observable(a: &Observable) -> Self {
        Self { outcomes: a.values().to_vec(), effects: a.spectral().projections().to_vec() }
    }

    pub fn outcomes(&self) -> &[f64] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[Matrix] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Matrix)> {
        self.outcomes.iter().copied().zip(self.effects.iter())
    }

    pub fn completeness_defect(&self) -> f64 {
        let n = self.dim();
        let sum = self.effects.iter().fold(Matrix::zeros(n, n), |acc, e| acc + e);
        max_abs_diff(&sum, &identity(n))
    }

    /// Smallest eigenvalue over all effects.
    pub fn min_eigenvalue(&self) -> f64 {
        self.effects.iter().map(min_eigenvalue).fold(f64::INFINITY, f64::min)
    }

    /// Operator norm of each effect, in outcome order.
    pub fn effect_norms(&self) -> Vec<EffectNorm> {
        self.iter().map(|(outcome, e)| EffectNorm { outcome, norm: operator_norm_hermitian(e) }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectNorm {
    pub outcome: f64,
    pub norm: f64,
}

/// Effects `Π(x) = Tr_K[U†(I ⊗ E^M(x))U (I ⊗ |ξ⟩⟨ξ|)]`, one per spectral value of the meter.
pub fn povm_of(p: &MeasuringProcess) -> Povm {
    let xi = p.probe_state().amplitudes();
    let probe_projector = p.lift_probe(&outer(xi, xi));
    let (outcomes, effects) = p
        .meter()
        .spectral()
        .iter()
        .map(|(x, e)| {
            let evolved = p.heisenberg(&p.lift_probe(e));
            let pi = partial_trace_second(&(evolved * &probe_projector), p.dim_h(), p.dim_k())
                .expect("dimensions fixed by the process");
            (x, pi)
        })
        .unzip();
    Povm { outcomes, effects }
}

/// Output distribution of the apparatus on input `ψ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub outcomes: Vec<f64>,
    /// `⟨ψ⊗ξ|U†(I ⊗ E^M(x))U|ψ⊗ξ⟩`
    pub probabilities: Vec<f64>,
    /// `⟨ψ|Π(x)|ψ⟩`
    pub via_povm: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn max_route_disagreement(&self) -> f64 {
        self.probabilities.iter().zip(&self.via_povm).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Probabilities of each meter outcome, computed on the full space and through the POVM.
pub fn output_distribution(p: &MeasuringProcess, psi: &StateVector) -> Result<OutcomeDistribution> {
    let joint = p.initial_state(psi)?;
    let evolved = &p.unitary * joint.amplitudes();
    let povm = povm_of(p);
    let mut probabilities = Vec::with_capacity(povm.outcomes.len());
    let mut via_povm = Vec::with_capacity(povm.outcomes.len());
    for ((_, e), (_, pi)) in p.meter().spectral().iter().zip(povm.iter()) {
        probabilities.push(inner(&evolved, &(p.lift_probe(e) * &evolved)).re);
        via_povm.push(sandwich(pi, psi.amplitudes()).re);
    }
    let dist = OutcomeDistribution { outcomes: povm.outcomes, probabilities, via_povm };
    debug_assert!(dist.max_route_disagreement() <= TOL_OP, "full-space and POVM probabilities disagree");
    Ok(dist)
}

/// Born statistical formula: the apparatus reproduces `⟨ψ|E^A(x)|ψ⟩` for every outcome.
///
/// Outcomes are matched to `spec(A)` within `value_match`; missing outcomes have
/// probability 0. Two candidates within the window is an [`Error::AmbiguousMatch`].
pub fn satisfies_bsf(p: &MeasuringProcess, a: &Observable, psi: &StateVector, tol: Tolerances) -> Result<bool> {
    check_dim(p.dim_h(), a.dim())?;
    let dist = output_distribution(p, psi)?;
    bsf_holds(&dist, a, psi, tol)
}

fn bsf_holds(dist: &OutcomeDistribution, a: &Observable, psi: &StateVector, tol: Tolerances) -> Result<bool> {
    let born = spectral_distribution(a, psi)?;
    let aligned = align_values(&dist.outcomes, a.values(), tol.value_match)?;
    Ok(aligned.iter().all(|v| {
        let got = v.left.map_or(0.0, |i| dist.probabilities[i]);
        let want = v.right.map_or(0.0, |j| born[j]);
        (got - want).abs() <= tol.tol
    }))
}

/// `|⟨ψ|Π(x)E^A(y)|ψ⟩| <= tol` for every pair of outcomes with `|x - y| > value_match`.
pub fn povm_perfectly_correlated(povm: &Povm, a: &Observable, psi: &StateVector, tol: Tolerances) -> Result<bool> {
    check_dim(povm.dim(), a.dim())?;
    check_dim(a.dim(), psi.dim())?;
    let psi = psi.amplitudes();
    let a_images: Vec<_> = a.spectral().projections().iter().map(|e| e * psi).collect();
    Ok(povm.iter().all(|(x, pi)| {
        a.values()
            .iter()
            .zip(&a_images)
            .all(|(&y, e_psi)| tol.same_value(x, y) || inner(psi, &(pi * e_psi)).norm() <= tol.tol)
    }))
}

/// The four equivalent characterizations of a precise measurement of `A` in `ψ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreciseMeasurementReport {
    /// `A ⊗ I` and `U†(I ⊗ M)U` perfectly correlated in `ψ ⊗ ξ`
    pub cond_i: bool,
    /// POVM perfectly correlated to `A` in `ψ`
    pub cond_ii: bool,
    /// Born formula on the eigenbasis of `C(A, ψ)` and on sampled unit vectors of it
    pub cond_iii: bool,
    /// `Π(x)P = E^A(x)P` for all `x`
    pub cond_iv: bool,
    pub effect_norms: Vec<EffectNorm>,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl PreciseMeasurementReport {
    pub fn all_agree(&self) -> bool {
        let c = [self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv];
        c.iter().all(|&b| b == c[0])
    }

    pub fn all_true(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii && self.cond_iv
    }
}

/// Evaluates the four conditions for `(process, A, ψ)`.
///
/// Condition (iii) is decided on the eigenbasis of `A` restricted to `C(A, ψ)`, which is a
/// finite certificate; `samples` seeded random unit vectors of `C(A, ψ)` are checked as well.
pub fn precise_measurement_report(
    p: &MeasuringProcess,
    a: &Observable,
    psi: &StateVector,
    tol: Tolerances,
    samples: usize,
    seed: u64,
) -> Result<PreciseMeasurementReport> {
    check_dim(p.dim_h(), a.dim())?;
    check_dim(p.dim_h(), psi.dim())?;
    let povm = povm_of(p);

    let lifted = Observable::new(p.lift_system(a.matrix()))?;
    let meter_after = heisenberg_meter(p)?;
    let cond_i = is_perfectly_correlated(&lifted, &meter_after, &p.initial_state(psi)?, tol)?.perfectly_correlated;

    let cond_ii = povm_perfectly_correlated(&povm, a, psi, tol)?;

    let cyc = cyclic_subspace(a, psi)?;
    let mut cond_iii = true;
    for b in cyc.basis() {
        let phi = StateVector::normalize(b.clone())?;
        cond_iii &= bsf_holds(&output_distribution(p, &phi)?, a, &phi, tol)?;
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let phi = cyc.random_state(&mut rng);
        cond_iii &= bsf_holds(&output_distribution(p, &phi)?, a, &phi, tol)?;
    }

    let proj = cyc.projection();
    let n = p.dim_h();
    let aligned = align_values(povm.outcomes(), a.values(), tol.value_match)?;
    let cond_iv = aligned.iter().all(|v| {
        let lhs = v.left.map_or_else(|| Matrix::zeros(n, n), |i| &povm.effects()[i] * proj);
        let rhs = v.right.map_or_else(|| Matrix::zeros(n, n), |j| &a.spectral().projections()[j] * proj);
        max_abs_diff(&lhs, &rhs) <= tol.tol
    });

    Ok(PreciseMeasurementReport {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        effect_norms: povm.effect_norms(),
        tol: tol.tol,
        seed,
        samples,
    })
}

/// State-independent precision: `Π(x) = E^A(x)` for every outcome, unmatched effects and
/// unmatched spectral projections compared against zero.
pub fn is_precise_for_all_states(p: &MeasuringProcess, a: &Observable, tol: Tolerances) -> Result<bool> {
    check_dim(p.dim_h(), a.dim())?;
    let povm = povm_of(p);
    let n = p.dim_h();
    let zero = Matrix::zeros(n, n);
    let aligned = align_values(povm.outcomes(), a.values(), tol.value_match)?;
    Ok(aligned.iter().all(|v| {
        let lhs = v.left.map_or(&zero, |i| &povm.effects()[i]);
        let rhs = v.right.map_or(&zero, |j| &a.spectral().projections()[j]);
        max_abs_diff(lhs, rhs) <= tol.tol
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diagonal;
    use crate::models::build_von_neumann;

    fn sz() -> Observable {
        Observable::diagonal(&[1.0, -1.0]).unwrap()
    }

    fn plus() -> StateVector {
        let s = 0.5f64.sqrt();
        StateVector::from_real(&[s, s]).unwrap()
    }

    fn cnot_process() -> MeasuringProcess {
        let basis = vec![StateVector::basis(2, 0).into_inner(), StateVector::basis(2, 1).into_inner()];
        build_von_neumann(&sz(), &basis, 0).unwrap().process
    }

    #[test]
    fn identity_interaction_meter_is_lifted_meter() {
        let p = MeasuringProcess::trivial(2, StateVector::basis(2, 0), sz()).unwrap();
        let m = heisenberg_meter(&p).unwrap();
        assert!(max_abs_diff(m.matrix(), &tensor(&identity(2), &diagonal(&[1.0, -1.0]))) < 1e-15);
        assert_eq!(m.values(), sz().values());
    }

    #[test]
    fn identity_interaction_povm_is_scalar() {
        let p = MeasuringProcess::trivial(2, plus(), sz()).unwrap();
        let povm = povm_of(&p);
        for (_, e) in povm.iter() {
            assert!(max_abs_diff(e, &(identity(2) * c(0.5, 0.0))) < 1e-14);
        }
        let dist = output_distribution(&p, &StateVector::basis(2, 0)).unwrap();
        assert!(dist.probabilities.iter().all(|q| (q - 0.5).abs() < 1e-14));
        assert!(!satisfies_bsf(&p, &sz(), &StateVector::basis(2, 0), Tolerances::default()).unwrap());
    }

    #[test]
    fn von_neumann_povm_is_spectral() {
        let p = cnot_process();
        let povm = povm_of(&p);
        let a = sz();
        for (x, e) in povm.iter() {
            assert!(max_abs_diff(e, a.projection_at(x, 1e-8).unwrap()) < 1e-14);
        }
        assert!(is_precise_for_all_states(&p, &a, Tolerances::default()).unwrap());
    }

    #[test]
    fn von_neumann_output_distribution() {
        let p = cnot_process();
        let psi = StateVector::normalize(crate::linalg::Vector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)])).unwrap();
        let dist = output_distribution(&p, &psi).unwrap();
        // outcomes ascending: -1 then +1
        assert!((dist.probabilities[0] - 0.64).abs() < 1e-14);
        assert!((dist.probabilities[1] - 0.36).abs() < 1e-14);
        assert!(dist.max_route_disagreement() < 1e-14);
        let r = precise_measurement_report(&p, &sz(), &psi, Tolerances::default(), 8, 3).unwrap();
        assert!(r.all_true());
    }

    #[test]
    fn trivial_povm_not_correlated_with_nondegenerate_observable() {
        let povm = Povm::new(vec![-1.0, 1.0], vec![identity(2) * c(0.5, 0.0), identity(2) * c(0.5, 0.0)]).unwrap();
        assert!(!povm_perfectly_correlated(&povm, &sz(), &plus(), Tolerances::default()).unwrap());
        let spectral = Povm::from_observable(&sz());
        assert!(povm_perfectly_correlated(&spectral, &sz(), &plus(), Tolerances::default()).unwrap());
    }

    #[test]
    fn constant_observable_with_point_mass_meter() {
        // A = 2I, meter reads 2 with certainty
        let a = Observable::diagonal(&[2.0, 2.0]).unwrap();
        let meter = Observable::diagonal(&[2.0, 5.0]).unwrap();
        let p = MeasuringProcess::trivial(2, StateVector::basis(2, 0), meter).unwrap();
        let r = precise_measurement_report(&p, &a, &plus(), Tolerances::default(), 4, 1).unwrap();
        assert!(r.all_true(), "{r:?}");
        assert!(is_precise_for_all_states(&p, &a, Tolerances::default()).unwrap());
        let povm = Povm::new(vec![2.0], vec![identity(2)]).unwrap();
        assert!(povm_perfectly_correlated(&povm, &a, &plus(), Tolerances::default()).unwrap());
    }

    #[test]
    fn trivial_process_fails_every_condition() {
        let p = MeasuringProcess::trivial(2, plus(), sz()).unwrap();
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let r = precise_measurement_report(&p, &sz(), &psi, Tolerances::default(), 4, 1).unwrap();
        assert!(!r.cond_i && !r.cond_ii && !r.cond_iii && !r.cond_iv, "{r:?}");
        assert!(!is_precise_for_all_states(&p, &sz(), Tolerances::default()).unwrap());
    }

    #[test]
    fn wrong_target_observable() {
        let p = cnot_process();
        let sx = Observable::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(!is_precise_for_all_states(&p, &sx, Tolerances::default()).unwrap());
    }

    #[test]
    fn ambiguous_outcome_matching_is_an_error() {
        let meter = Observable::diagonal(&[0.0, 1.0]).unwrap();
        let p = MeasuringProcess::trivial(2, StateVector::basis(2, 0), meter).unwrap();
        let a = Observable::diagonal(&[0.5, 3.0]).unwrap();
        let tol = Tolerances { tol: 1e-9, value_match: 0.5 };
        assert!(matches!(satisfies_bsf(&p, &a, &plus(), tol), Err(Error::AmbiguousMatch { .. })));
    }

    #[test]
    fn rejects_non_unitary_interaction() {
        let err = MeasuringProcess::new(StateVector::basis(2, 0), identity(4) * c(2.0, 0.0), sz()).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }
}
