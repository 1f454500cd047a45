//! Seeded random generators and random ensembles.
//!
//! The generator is Xoshiro256++ seeded with `seed_from_u64`, which expands the 64-bit
//! seed through SplitMix64. A uniform variate in `[0, 1)` is `(next_u64 >> 11) * 2^-53`.
//! A complex standard normal draws the real part, then the imaginary part, each from
//! `N(0, 1)` (ziggurat).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::linalg::{c, Matrix, StateVector, Vector};

pub type SeededRng = Xoshiro256PlusPlus;

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 7;

pub fn seeded_rng(seed: u64) -> SeededRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Uniformly random unit vector in the span of an orthonormal `basis`.
///
/// Coefficients are complex standard normals over the basis, then the result is normalized.
pub fn random_unit_in_span<R: Rng + ?Sized>(basis: &[Vector], rng: &mut R) -> StateVector {
    assert!(!basis.is_empty(), "cannot sample from an empty span");
    let dim = basis[0].len();
    loop {
        let v = basis.iter().fold(Vector::zeros(dim), |acc, b| acc + b * complex_normal(rng));
        if let Ok(s) = StateVector::normalize(v) {
            return s;
        }
    }
}

pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    let basis: Vec<Vector> = (0..dim).map(|i| StateVector::basis(dim, i).into_inner()).collect();
    random_unit_in_span(&basis, rng)
}

pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Random Hermitian matrix `(G + G†)/2` from a Ginibre matrix `G`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    let g = ginibre(dim, rng);
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `diag(R)` folded into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    let qr = ginibre(dim, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

/// Random real permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    p
}
