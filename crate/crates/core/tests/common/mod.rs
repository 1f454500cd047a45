//! Seeded instance batteries shared by the integration suites.
#![allow(dead_code)]

use perfcorr::linalg::{c, hermitian_eigen, outer, Matrix, Observable, StateVector, Vector};
use perfcorr::measurement::MeasuringProcess;
use perfcorr::models::{build_von_neumann, von_neumann_for};
use perfcorr::sampling::{random_hermitian, random_state, random_unit_in_span, random_unitary, seeded_rng, SeededRng};
use rand::Rng;

pub const BATTERY_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// random noncommuting X, Y and a random state
    Generic,
    /// Y = X on a span S of eigenvectors of X, arbitrary on S⊥; ψ ∈ S
    SharedSubspace,
    /// same operators, ψ drawn from the whole space
    SharedSubspaceGenericState,
    /// simultaneously diagonal, random state
    Commuting,
    /// simultaneously diagonal, ψ supported where the diagonals agree
    CommutingAgreeing,
    /// Y = X + D with Dψ = 0, so Xψ = Yψ
    EqualImages,
    /// Y = X
    Identical,
}

pub const PAIR_KINDS: [PairKind; 7] = [
    PairKind::Generic,
    PairKind::SharedSubspace,
    PairKind::SharedSubspaceGenericState,
    PairKind::Commuting,
    PairKind::CommutingAgreeing,
    PairKind::EqualImages,
    PairKind::Identical,
];

pub struct PairInstance {
    pub kind: PairKind,
    pub x: Observable,
    pub y: Observable,
    pub psi: StateVector,
}

fn integer_values(dim: usize, rng: &mut SeededRng) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-2i32..=2) as f64).collect()
}

/// `V diag(values) V†`.
pub fn conjugated_diagonal(v: &Matrix, values: &[f64]) -> Matrix {
    v * perfcorr::linalg::diagonal(values) * v.adjoint()
}

fn columns(v: &Matrix, range: std::ops::Range<usize>) -> Vec<Vector> {
    range.map(|j| v.column(j).into_owned()).collect()
}

pub fn pair_instance(index: usize, seed: u64) -> PairInstance {
    let mut rng = seeded_rng(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let dim = 2 + index % 5;
    let kind = PAIR_KINDS[index % PAIR_KINDS.len()];
    let (x, y, psi) = match kind {
        PairKind::Generic => {
            (random_hermitian(dim, &mut rng), random_hermitian(dim, &mut rng), random_state(dim, &mut rng))
        }
        PairKind::SharedSubspace | PairKind::SharedSubspaceGenericState => {
            let v = random_unitary(dim, &mut rng);
            let values = integer_values(dim, &mut rng);
            let shared = rng.random_range(1..dim);
            let x = conjugated_diagonal(&v, &values);
            let complement = columns(&v, shared..dim);
            let q = complement.iter().fold(Matrix::zeros(dim, dim), |acc, b| acc + outer(b, b));
            let on_shared = columns(&v, 0..shared)
                .iter()
                .zip(&values)
                .fold(Matrix::zeros(dim, dim), |acc, (b, &val)| acc + outer(b, b) * c(val, 0.0));
            let h = random_hermitian(dim, &mut rng);
            let y = on_shared + &q * h * &q;
            let psi = if kind == PairKind::SharedSubspace {
                random_unit_in_span(&columns(&v, 0..shared), &mut rng)
            } else {
                random_state(dim, &mut rng)
            };
            (x, y, psi)
        }
        PairKind::Commuting | PairKind::CommutingAgreeing => {
            let v = random_unitary(dim, &mut rng);
            let xv = integer_values(dim, &mut rng);
            let mut yv = integer_values(dim, &mut rng);
            yv[0] = xv[0];
            let psi = if kind == PairKind::Commuting {
                random_state(dim, &mut rng)
            } else {
                let agreeing: Vec<Vector> =
                    (0..dim).filter(|&i| xv[i] == yv[i]).map(|i| v.column(i).into_owned()).collect();
                random_unit_in_span(&agreeing, &mut rng)
            };
            (conjugated_diagonal(&v, &xv), conjugated_diagonal(&v, &yv), psi)
        }
        PairKind::EqualImages => {
            let x = random_hermitian(dim, &mut rng);
            let psi = random_state(dim, &mut rng);
            let q = Matrix::identity(dim, dim) - outer(psi.amplitudes(), psi.amplitudes());
            let y = &x + &q * random_hermitian(dim, &mut rng) * &q;
            (x, y, psi)
        }
        PairKind::Identical => {
            let x = random_hermitian(dim, &mut rng);
            (x.clone(), x, random_state(dim, &mut rng))
        }
    };
    PairInstance { kind, x: hermitian(x), y: hermitian(y), psi }
}

fn hermitian(m: Matrix) -> Observable {
    Observable::new((&m + m.adjoint()) * c(0.5, 0.0)).expect("hermitian by construction")
}

pub fn pair_battery(count: usize) -> Vec<PairInstance> {
    (0..count).map(|i| pair_instance(i, BATTERY_SEED)).collect()
}

/// `exp(iεH)` for Hermitian `h`.
pub fn unitary_exp(h: &Matrix, eps: f64) -> Matrix {
    let (values, vectors) = hermitian_eigen(h);
    values
        .iter()
        .zip(&vectors)
        .fold(Matrix::zeros(h.nrows(), h.ncols()), |acc, (&l, v)| acc + outer(v, v) * c(0.0, eps * l).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessKind {
    VonNeumann,
    VonNeumannDegenerate,
    IdentityInteraction,
    IdentityConstantObservable,
    /// U_vn (R ⊗ I) with R fixing a span S of eigenvectors of A, ψ ∈ S
    PartiallyScrambledInside,
    /// same process, ψ from the whole space
    PartiallyScrambledOutside,
    /// exp(iεH) U_vn
    Perturbed,
    Haar,
}

pub const PROCESS_KINDS: [ProcessKind; 8] = [
    ProcessKind::VonNeumann,
    ProcessKind::VonNeumannDegenerate,
    ProcessKind::IdentityInteraction,
    ProcessKind::IdentityConstantObservable,
    ProcessKind::PartiallyScrambledInside,
    ProcessKind::PartiallyScrambledOutside,
    ProcessKind::Perturbed,
    ProcessKind::Haar,
];

pub struct ProcessInstance {
    pub kind: ProcessKind,
    pub process: MeasuringProcess,
    pub a: Observable,
    pub psi: StateVector,
}

fn random_observable_with_values(values: &[f64], rng: &mut SeededRng) -> (Observable, Matrix) {
    let v = random_unitary(values.len(), rng);
    (hermitian(conjugated_diagonal(&v, values)), v)
}

fn distinct_values(dim: usize, rng: &mut SeededRng) -> Vec<f64> {
    let mut vals: Vec<f64> = (0..dim).map(|k| k as f64 * 1.5 - 2.0 + rng.random_range(0.0..0.5)).collect();
    vals.reverse();
    vals
}

pub fn process_instance(index: usize, seed: u64) -> ProcessInstance {
    let mut rng = seeded_rng(seed ^ (index as u64).wrapping_mul(0xd1b5_4a32_d192_ed03));
    let dim = 2 + index % 3;
    let kind = PROCESS_KINDS[index % PROCESS_KINDS.len()];
    match kind {
        ProcessKind::VonNeumann | ProcessKind::Perturbed | ProcessKind::Haar => {
            let (a, _) = random_observable_with_values(&distinct_values(dim, &mut rng), &mut rng);
            let model = von_neumann_for(&a).expect("valid model");
            let process = match kind {
                ProcessKind::VonNeumann => model.process,
                ProcessKind::Perturbed => {
                    let w = unitary_exp(&random_hermitian(dim * dim, &mut rng), 0.3);
                    let u = w * model.process.unitary();
                    model.process.with_unitary(u).expect("unitary")
                }
                _ => model.process.with_unitary(random_unitary(dim * dim, &mut rng)).expect("unitary"),
            };
            ProcessInstance { kind, process, a, psi: random_state(dim, &mut rng) }
        }
        ProcessKind::VonNeumannDegenerate => {
            let mut values = distinct_values(dim, &mut rng);
            values[dim - 1] = values[0];
            let (a, v) = random_observable_with_values(&values, &mut rng);
            let basis = columns(&v, 0..dim);
            let xi_index = rng.random_range(0..dim);
            let model = build_von_neumann(&a, &basis, xi_index).expect("valid model");
            ProcessInstance { kind, process: model.process, a, psi: random_state(dim, &mut rng) }
        }
        ProcessKind::IdentityInteraction => {
            let (a, _) = random_observable_with_values(&distinct_values(dim, &mut rng), &mut rng);
            let dim_k = 2 + rng.random_range(0..3);
            let meter = hermitian(random_hermitian(dim_k, &mut rng));
            let xi = random_state(dim_k, &mut rng);
            let process = MeasuringProcess::trivial(dim, xi, meter).expect("valid");
            ProcessInstance { kind, process, a, psi: random_state(dim, &mut rng) }
        }
        ProcessKind::IdentityConstantObservable => {
            let value = rng.random_range(-2i32..=2) as f64;
            let a = Observable::diagonal(&vec![value; dim]).expect("diagonal");
            let dim_k = 2 + rng.random_range(0..3);
            let mut meter_values: Vec<f64> = (0..dim_k).map(|k| value + 1.0 + k as f64).collect();
            let pointer = rng.random_range(0..dim_k);
            meter_values[pointer] = value;
            let meter = Observable::diagonal(&meter_values).expect("diagonal");
            let process = MeasuringProcess::trivial(dim, StateVector::basis(dim_k, pointer), meter).expect("valid");
            ProcessInstance { kind, process, a, psi: random_state(dim, &mut rng) }
        }
        ProcessKind::PartiallyScrambledInside | ProcessKind::PartiallyScrambledOutside => {
            let (a, v) = random_observable_with_values(&distinct_values(dim, &mut rng), &mut rng);
            let model = build_von_neumann(&a, &columns(&v, 0..dim), 0).expect("valid model");
            let fixed = rng.random_range(1..dim);
            // R = identity on the first `fixed` eigenvectors, Haar on the rest
            let rest = columns(&v, fixed..dim);
            let local = random_unitary(dim - fixed, &mut rng);
            let mut r = columns(&v, 0..fixed).iter().fold(Matrix::zeros(dim, dim), |acc, b| acc + outer(b, b));
            for (i, bi) in rest.iter().enumerate() {
                for (j, bj) in rest.iter().enumerate() {
                    r += outer(bi, bj) * local[(i, j)];
                }
            }
            let u = model.process.unitary() * model.process.lift_system(&r);
            let process = model.process.with_unitary(u).expect("unitary");
            let psi = if kind == ProcessKind::PartiallyScrambledInside {
                random_unit_in_span(&columns(&v, 0..fixed), &mut rng)
            } else {
                random_state(dim, &mut rng)
            };
            ProcessInstance { kind, process, a, psi }
        }
    }
}

pub fn process_battery(count: usize) -> Vec<ProcessInstance> {
    (0..count).map(|i| process_instance(i, BATTERY_SEED)).collect()
}
