//! JSON encoding shared by fixtures, instance files and reports.
//!
//! A complex scalar is a two-element array `[re, im]`, a vector is an array of scalars and a
//! matrix is an array of rows. A measuring process is `{dimH, dimK, xi, U, M}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, Matrix, Observable, StateVector, Vector};
use crate::measurement::MeasuringProcess;
use crate::models::HeisenbergPairFixture;

pub type JsonComplex = [f64; 2];
pub type JsonVector = Vec<JsonComplex>;
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

pub fn matrix_to_json(m: &Matrix) -> JsonMatrix {
    m.row_iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<Matrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::Schema("matrix needs at least one row and one column".into()));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
        return Err(Error::Schema(format!("row {bad} has {} entries, expected {n_cols}", rows[bad].len())));
    }
    Ok(Matrix::from_fn(n_rows, n_cols, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

pub fn vector_to_json(v: &Vector) -> JsonVector {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vector_from_json(v: &JsonVector) -> Result<Vector> {
    if v.is_empty() {
        return Err(Error::Schema("vector must be nonempty".into()));
    }
    Ok(Vector::from_iterator(v.len(), v.iter().map(|z| c(z[0], z[1]))))
}

pub fn observable_from_json(m: &JsonMatrix) -> Result<Observable> {
    Observable::new(matrix_from_json(m)?)
}

pub fn state_from_json(v: &JsonVector) -> Result<StateVector> {
    StateVector::new(vector_from_json(v)?)
}

/// `{dimH, dimK, xi, U, M}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessJson {
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    #[serde(rename = "dimK")]
    pub dim_k: usize,
    pub xi: JsonVector,
    #[serde(rename = "U")]
    pub u: JsonMatrix,
    #[serde(rename = "M")]
    pub m: JsonMatrix,
}

impl ProcessJson {
    pub fn from_process(p: &MeasuringProcess) -> Self {
        Self {
            dim_h: p.dim_h(),
            dim_k: p.dim_k(),
            xi: vector_to_json(p.probe_state().amplitudes()),
            u: matrix_to_json(p.unitary()),
            m: matrix_to_json(p.meter().matrix()),
        }
    }

    pub fn to_process(&self) -> Result<MeasuringProcess> {
        let process = MeasuringProcess::new(
            state_from_json(&self.xi)?,
            matrix_from_json(&self.u)?,
            observable_from_json(&self.m)?,
        )?;
        if process.dim_h() != self.dim_h || process.dim_k() != self.dim_k {
            return Err(Error::Schema(format!(
                "declared dimH={} dimK={} but matrices imply dimH={} dimK={}",
                self.dim_h,
                self.dim_k,
                process.dim_h(),
                process.dim_k()
            )));
        }
        Ok(process)
    }
}

/// Pair of observables and a state: `{X, Y, psi}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "X")]
    pub x: JsonMatrix,
    #[serde(rename = "Y")]
    pub y: JsonMatrix,
    pub psi: JsonVector,
}

impl PairJson {
    pub fn to_pair(&self) -> Result<(Observable, Observable, StateVector)> {
        Ok((observable_from_json(&self.x)?, observable_from_json(&self.y)?, state_from_json(&self.psi)?))
    }
}

/// Heisenberg pair with its evolution: `{name, X, Y, U, psi}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureJson {
    pub name: String,
    #[serde(rename = "X")]
    pub x: JsonMatrix,
    #[serde(rename = "Y")]
    pub y: JsonMatrix,
    #[serde(rename = "U")]
    pub u: JsonMatrix,
    pub psi: JsonVector,
}

impl FixtureJson {
    pub fn from_fixture(name: &str, f: &HeisenbergPairFixture) -> Self {
        Self {
            name: name.to_owned(),
            x: matrix_to_json(f.x.matrix()),
            y: matrix_to_json(f.y.matrix()),
            u: matrix_to_json(&f.evolution),
            psi: vector_to_json(f.psi.amplitudes()),
        }
    }

    pub fn to_fixture(&self) -> Result<HeisenbergPairFixture> {
        HeisenbergPairFixture::new(
            observable_from_json(&self.x)?,
            observable_from_json(&self.y)?,
            matrix_from_json(&self.u)?,
            state_from_json(&self.psi)?,
        )
    }
}
