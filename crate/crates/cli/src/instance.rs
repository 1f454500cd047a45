//! Instance files: `{schema_version, kind, ...payload, options}`.

use std::path::Path;

use perfcorr::linalg::{Observable, StateVector};
use perfcorr::measurement::MeasuringProcess;
use perfcorr::schema::{
    observable_from_json, state_from_json, FixtureJson, JsonMatrix, JsonVector, PairJson, ProcessJson,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default)]
    pub options: FileOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Pair(PairJson),
    Process(ProcessInstanceJson),
    Fixture(FixtureJson),
}

/// A measuring process together with the target observable and the input state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessInstanceJson {
    #[serde(flatten)]
    pub process: ProcessJson,
    #[serde(rename = "A")]
    pub a: JsonMatrix,
    pub psi: JsonVector,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub tol: Option<f64>,
    pub value_match_tol: Option<f64>,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub samples: Option<usize>,
}

pub struct PairInput {
    pub name: Option<String>,
    pub x: Observable,
    pub y: Observable,
    pub psi: StateVector,
}

pub struct ProcessInput {
    pub process: MeasuringProcess,
    pub a: Observable,
    pub psi: StateVector,
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let file: Self =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "{}: unsupported schema_version {} (expected {SCHEMA_VERSION})",
                path.display(),
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Pair(_) => "pair",
            Payload::Process(_) => "process",
            Payload::Fixture(_) => "fixture",
        }
    }

    /// Pair view of a `pair` or `fixture` instance.
    pub fn pair(&self) -> Result<Option<PairInput>, CliError> {
        Ok(match &self.payload {
            Payload::Pair(p) => {
                let (x, y, psi) = p.to_pair()?;
                Some(PairInput { name: None, x, y, psi })
            }
            Payload::Fixture(f) => {
                let fixture = f.to_fixture()?;
                Some(PairInput { name: Some(f.name.clone()), x: fixture.x, y: fixture.y, psi: fixture.psi })
            }
            Payload::Process(_) => None,
        })
    }

    pub fn process(&self) -> Result<Option<ProcessInput>, CliError> {
        let Payload::Process(p) = &self.payload else { return Ok(None) };
        Ok(Some(ProcessInput {
            process: p.process.to_process()?,
            a: observable_from_json(&p.a)?,
            psi: state_from_json(&p.psi)?,
        }))
    }
}
