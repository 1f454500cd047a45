use std::path::Path;

use perfcorr::correlation::{is_perfectly_correlated, joint_rms_criterion_holds, joint_term_table};
use perfcorr::cyclic::{
    common_eigenstate_decomposition, correlation_conditions, equal_distribution_certificate, DEFAULT_SPHERE_SAMPLES,
};
use perfcorr::linalg::{max_abs_diff, Observable, StateVector};
use perfcorr::measurement::{is_precise_for_all_states, output_distribution, precise_measurement_report};
use perfcorr::models::{build_von_neumann, ozawa_counterexample, product_state_example, verify_von_neumann};
use perfcorr::sampling::DEFAULT_SEED;
use perfcorr::simulator::{simulate_consecutive, simulate_indirect, DEFAULT_SHOTS};
use perfcorr::tolerance::Tolerances;
use perfcorr::Error;

use crate::instance::{FileOptions, InstanceFile};
use crate::report::{
    Check, CorrelateReport, CounterexampleSection, Decomposition, Envelope, MeasureCheckReport, PaperExamplesReport,
    ProductStateSection, Report, SimulateReport, REPORT_SCHEMA_VERSION,
};
use crate::CliError;

pub const DEFAULT_GATE: f64 = 0.02;

/// Command-line overrides; unset fields fall back to the instance file, then to defaults.
pub struct Flags {
    pub tol: Option<f64>,
    pub value_match_tol: Option<f64>,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub samples: Option<usize>,
    pub gate: f64,
}

struct Settings {
    tol: Tolerances,
    seed: u64,
    shots: u64,
    samples: usize,
}

fn non_negative(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::Input(format!("{name} must be a finite non-negative number, got {v}")))
    }
}

impl Flags {
    fn resolve(&self, file: &FileOptions) -> Result<Settings, CliError> {
        let defaults = Tolerances::default();
        Ok(Settings {
            tol: Tolerances {
                tol: non_negative("tol", self.tol.or(file.tol).unwrap_or(defaults.tol))?,
                value_match: non_negative(
                    "value-match-tol",
                    self.value_match_tol.or(file.value_match_tol).unwrap_or(defaults.value_match),
                )?,
            },
            seed: self.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            shots: self.shots.or(file.shots).unwrap_or(DEFAULT_SHOTS),
            samples: self.samples.or(file.samples).unwrap_or(DEFAULT_SPHERE_SAMPLES),
        })
    }
}

fn envelope(holds: bool, report: Report) -> Envelope {
    Envelope { schema_version: REPORT_SCHEMA_VERSION, holds, report }
}

fn wrong_kind(file: &InstanceFile, command: &str, expected: &str) -> CliError {
    CliError::Input(format!("{command} expects a {expected} instance, got kind \"{}\"", file.kind()))
}

pub fn correlate(path: &Path, flags: &Flags) -> Result<Envelope, CliError> {
    let file = InstanceFile::load(path)?;
    let s = flags.resolve(&file.options)?;
    let pair = file.pair()?.ok_or_else(|| wrong_kind(&file, "correlate", "pair or fixture"))?;

    let verdict = is_perfectly_correlated(&pair.x, &pair.y, &pair.psi, s.tol)?;
    let conditions = correlation_conditions(&pair.x, &pair.y, &pair.psi, s.tol, s.samples, s.seed)?;
    let decomposition = match common_eigenstate_decomposition(&pair.x, &pair.y, &pair.psi, s.tol) {
        Ok(d) => Decomposition { decomposable: true, residual: d.residual },
        Err(Error::NotDecomposable { residual }) => Decomposition { decomposable: false, residual },
        Err(e) => return Err(e.into()),
    };
    let certificate = equal_distribution_certificate(&pair.x, &pair.y, &pair.psi, s.tol)?;
    Ok(envelope(
        verdict.perfectly_correlated,
        Report::Correlate(CorrelateReport {
            name: pair.name,
            tolerances: s.tol,
            verdict,
            conditions,
            decomposition,
            equal_distribution_certificate: certificate,
        }),
    ))
}

pub fn measure_check(path: &Path, flags: &Flags) -> Result<Envelope, CliError> {
    let file = InstanceFile::load(path)?;
    let s = flags.resolve(&file.options)?;
    let input = file.process()?.ok_or_else(|| wrong_kind(&file, "measure-check", "process"))?;

    let conditions = precise_measurement_report(&input.process, &input.a, &input.psi, s.tol, s.samples, s.seed)?;
    let precise_for_all_states = is_precise_for_all_states(&input.process, &input.a, s.tol)?;
    let output_distribution = output_distribution(&input.process, &input.psi)?;
    Ok(envelope(
        conditions.all_true(),
        Report::MeasureCheck(MeasureCheckReport {
            tolerances: s.tol,
            conditions,
            precise_for_all_states,
            output_distribution,
        }),
    ))
}

pub fn paper_examples(flags: &Flags) -> Result<Envelope, CliError> {
    let s = flags.resolve(&FileOptions::default())?;
    let tol = s.tol.tol;
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| checks.push(Check { name: name.to_owned(), pass });

    let f = ozawa_counterexample();
    let image_difference = (f.x.matrix() * f.psi.amplitudes() - f.y.matrix() * f.psi.amplitudes()).norm();
    let counter_verdict = is_perfectly_correlated(&f.x, &f.y, &f.psi, s.tol)?;
    let close = |got: &[f64; 3], want: [f64; 3]| got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol);
    check("moments of A(t1) are (1, 2, 4)", close(&f.moments.x, [1.0, 2.0, 4.0]));
    check("moments of A(t2) are (1, 2, 3)", close(&f.moments.y, [1.0, 2.0, 3.0]));
    check("A(t1)psi = A(t2)psi", image_difference <= tol);
    check("A(t2) = U'A(t1)U", f.heisenberg_residual() <= tol);
    check("A(t1) != A(t2) as operators", max_abs_diff(f.x.matrix(), f.y.matrix()) > tol);
    check("counterexample pair is not jointly distributed", !counter_verdict.jointly_distributed);
    check("counterexample pair is not perfectly correlated", !counter_verdict.perfectly_correlated);
    check(
        "perfect correlation iff jointly distributed with zero rms difference",
        joint_rms_criterion_holds(&f.x, &f.y, &f.psi, s.tol)?,
    );

    let sz = Observable::diagonal(&[1.0, -1.0])?;
    let h = 0.5f64.sqrt();
    let product = product_state_example(&sz, &StateVector::from_real(&[h, h])?)?;
    let pf = &product.fixture;
    let product_verdict = is_perfectly_correlated(&pf.x, &pf.y, &pf.psi, s.tol)?;
    let table = joint_term_table(&pf.x, &pf.y, &pf.psi)?;
    check("product state is equally distributed", product_verdict.equally_distributed);
    check("product state is statistically independent", product.statistically_independent);
    check(
        "every product-state joint term is 1/4",
        table.iter().all(|(_, _, t)| (t.re - 0.25).abs() <= tol && t.im.abs() <= tol),
    );
    check("product state is not perfectly correlated", !product_verdict.perfectly_correlated);

    let basis = [StateVector::basis(2, 0).into_inner(), StateVector::basis(2, 1).into_inner()];
    let model = build_von_neumann(&sz, &basis, 0)?;
    let von_neumann = verify_von_neumann(&model, s.samples, s.seed, s.tol)?;
    check("von Neumann sigma_z model is exact", model.defining_relation_defect() <= tol);
    check("von Neumann sigma_z model verifies", von_neumann.all_pass());

    let holds = checks.iter().all(|c| c.pass);
    Ok(envelope(
        holds,
        Report::PaperExamples(PaperExamplesReport {
            tolerances: s.tol,
            counterexample: CounterexampleSection {
                moments: f.moments,
                image_difference,
                heisenberg_residual: f.heisenberg_residual(),
                operators_differ: max_abs_diff(f.x.matrix(), f.y.matrix()) > tol,
                verdict: counter_verdict,
            },
            product_state: ProductStateSection {
                equally_distributed: product.equally_distributed,
                statistically_independent: product.statistically_independent,
                independence_defect: product.independence_defect,
                verdict: product_verdict,
            },
            von_neumann,
            checks,
        }),
    ))
}

pub fn simulate(path: &Path, flags: &Flags) -> Result<Envelope, CliError> {
    let file = InstanceFile::load(path)?;
    let s = flags.resolve(&file.options)?;
    let gate = non_negative("gate", flags.gate)?;
    let sample = if let Some(pair) = file.pair()? {
        simulate_consecutive(&pair.x, &pair.y, &pair.psi, s.shots, s.seed)?
    } else if let Some(input) = file.process()? {
        simulate_indirect(&input.process, &input.psi, s.shots, s.seed)?
    } else {
        return Err(wrong_kind(&file, "simulate", "pair, fixture or process"));
    };
    let holds = sample.max_abs_deviation <= gate && sample.unexpected.is_empty();
    Ok(envelope(holds, Report::Simulate(SimulateReport { gate, sample })))
}
