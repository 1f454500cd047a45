use super::{c, inner, tensor_vectors, Vector, TOL_NORM};
use crate::error::{Error, Result};

/// A unit-norm complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(Vector);

impl StateVector {
    /// Accepts `amplitudes` only if its norm is within `TOL_NORM` of 1.
    pub fn new(amplitudes: Vector) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || (norm - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(amplitudes))
    }

    /// Rescales `v` to unit norm; fails on (numerically) zero vectors.
    pub fn normalize(v: Vector) -> Result<Self> {
        let norm = v.norm();
        if v.is_empty() || norm <= TOL_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(v.unscale(norm)))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(Vector::from_iterator(amplitudes.len(), amplitudes.iter().map(|&a| c(a, 0.0))))
    }

    /// Computational basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut v = Vector::zeros(dim);
        v[index] = c(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &Vector {
        &self.0
    }

    pub fn into_inner(self) -> Vector {
        self.0
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector(tensor_vectors(&self.0, &other.0))
    }

    pub fn inner(&self, other: &StateVector) -> num_complex::Complex64 {
        inner(&self.0, &other.0)
    }
}

impl AsRef<Vector> for StateVector {
    fn as_ref(&self) -> &Vector {
        &self.0
    }
}
