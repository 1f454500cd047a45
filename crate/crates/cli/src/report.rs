//! Versioned report envelope and its text rendering.

use std::fmt::Write;

use perfcorr::correlation::CorrelationVerdict;
use perfcorr::cyclic::CorrelationConditions;
use perfcorr::measurement::{OutcomeDistribution, PreciseMeasurementReport};
use perfcorr::models::{MomentTable, VonNeumannReport};
use perfcorr::simulator::{SampleKind, SampleReport};
use perfcorr::tolerance::Tolerances;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    /// Whether the checked property holds; decides the exit code.
    pub holds: bool,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Correlate(CorrelateReport),
    MeasureCheck(MeasureCheckReport),
    PaperExamples(PaperExamplesReport),
    Simulate(SimulateReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub decomposable: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelateReport {
    pub name: Option<String>,
    pub tolerances: Tolerances,
    pub verdict: CorrelationVerdict,
    pub conditions: CorrelationConditions,
    pub decomposition: Decomposition,
    pub equal_distribution_certificate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureCheckReport {
    pub tolerances: Tolerances,
    pub conditions: PreciseMeasurementReport,
    pub precise_for_all_states: bool,
    pub output_distribution: OutcomeDistribution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleSection {
    pub moments: MomentTable,
    pub image_difference: f64,
    pub heisenberg_residual: f64,
    pub operators_differ: bool,
    pub verdict: CorrelationVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductStateSection {
    pub equally_distributed: bool,
    pub statistically_independent: bool,
    pub independence_defect: f64,
    pub verdict: CorrelationVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperExamplesReport {
    pub tolerances: Tolerances,
    pub counterexample: CounterexampleSection,
    pub product_state: ProductStateSection,
    pub von_neumann: VonNeumannReport,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub gate: f64,
    pub sample: SampleReport,
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict_lines(out: &mut String, v: &CorrelationVerdict) {
    let _ = writeln!(out, "  jointly distributed:   {}", mark(v.jointly_distributed));
    let _ = writeln!(out, "  perfectly correlated:  {}", mark(v.perfectly_correlated));
    let _ = writeln!(out, "  equally distributed:   {}", mark(v.equally_distributed));
    let _ = writeln!(out, "  rms difference:        {:.3e}", v.rms_difference);
    if let Some(w) = v.worst_violation {
        let _ =
            writeln!(out, "  largest cross term:    <E(x={}) E(y={})> = {:.6} {:+.6}i", w.x, w.y, w.term.re, w.term.im);
    }
}

impl Envelope {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.report {
            Report::Correlate(r) => {
                let _ = writeln!(out, "correlate{}", r.name.as_ref().map(|n| format!(" {n}")).unwrap_or_default());
                verdict_lines(&mut out, &r.verdict);
                let c = &r.conditions;
                let _ = writeln!(out, "conditions (tol {:.1e}, {} samples, seed {}):", c.tol, c.samples, c.seed);
                let _ = writeln!(out, "  (i)   correlated in psi:                 {}", mark(c.cond_i));
                let _ = writeln!(out, "  (ii)  correlated on the cyclic subspace: {}", mark(c.cond_ii));
                let _ = writeln!(out, "  (iii) f(X)psi = f(Y)psi:                 {}", mark(c.cond_iii));
                let _ = writeln!(out, "  (iv)  f(X)P = f(Y)P:                     {}", mark(c.cond_iv));
                let _ = writeln!(out, "  (v)   XP = YP:                           {}", mark(c.cond_v));
                let _ = writeln!(
                    out,
                    "common eigenvector decomposition: {} (residual {:.3e})",
                    mark(r.decomposition.decomposable),
                    r.decomposition.residual
                );
                let _ = writeln!(out, "equal distribution certificate:   {}", mark(r.equal_distribution_certificate));
            }
            Report::MeasureCheck(r) => {
                let c = &r.conditions;
                let _ = writeln!(out, "measure-check (tol {:.1e}, {} samples, seed {})", c.tol, c.samples, c.seed);
                let _ = writeln!(out, "  (i)   meter correlated with A:           {}", mark(c.cond_i));
                let _ = writeln!(out, "  (ii)  POVM correlated with A:            {}", mark(c.cond_ii));
                let _ = writeln!(out, "  (iii) Born formula on cyclic subspace:   {}", mark(c.cond_iii));
                let _ = writeln!(out, "  (iv)  Pi(x)P = E^A(x)P:                  {}", mark(c.cond_iv));
                let _ = writeln!(out, "precise in every state: {}", mark(r.precise_for_all_states));
                let _ = writeln!(out, "outcome  meter route  POVM route");
                let d = &r.output_distribution;
                for ((x, p), q) in d.outcomes.iter().zip(&d.probabilities).zip(&d.via_povm) {
                    let _ = writeln!(out, "{x:>8.4}  {p:>11.6}  {q:>10.6}");
                }
            }
            Report::PaperExamples(r) => {
                let m = &r.counterexample.moments;
                let _ = writeln!(out, "moments      1st      2nd      3rd");
                let _ = writeln!(out, "A(t1)   {:>8.4} {:>8.4} {:>8.4}", m.x[0], m.x[1], m.x[2]);
                let _ = writeln!(out, "A(t2)   {:>8.4} {:>8.4} {:>8.4}", m.y[0], m.y[1], m.y[2]);
                let _ = writeln!(out, "counterexample pair:");
                verdict_lines(&mut out, &r.counterexample.verdict);
                let _ = writeln!(out, "product state (sigma_z, |+>):");
                verdict_lines(&mut out, &r.product_state.verdict);
                let _ = writeln!(out, "  independent:           {}", mark(r.product_state.statistically_independent));
                let v = &r.von_neumann;
                let _ = writeln!(
                    out,
                    "von Neumann sigma_z model ({} states): identity {}, value reproducing {}, repeatability {}",
                    v.states_checked,
                    mark(v.operator_identity),
                    mark(v.value_reproducing),
                    mark(v.repeatability)
                );
                for c in &r.checks {
                    let _ = writeln!(out, "[{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name);
                }
            }
            Report::Simulate(r) => {
                let s = &r.sample;
                let kind = match s.kind {
                    SampleKind::Consecutive => "consecutive",
                    SampleKind::Indirect => "indirect",
                };
                let _ = writeln!(out, "simulate {kind} ({} shots, seed {})", s.shots, s.seed);
                let _ = writeln!(out, "outcome            count  frequency  probability");
                for e in &s.entries {
                    let key = e.outcome.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ");
                    let _ = writeln!(out, "{key:<16} {:>7}  {:>9.6}  {:>11.6}", e.count, e.frequency, e.probability);
                }
                let _ = writeln!(out, "max |frequency - probability|: {:.5} (gate {})", s.max_abs_deviation, r.gate);
                let _ = writeln!(out, "total variation:               {:.5}", s.total_variation);
                if s.kind == SampleKind::Consecutive {
                    let _ = writeln!(out, "off-diagonal counts:           {}", s.off_diagonal_count);
                }
                if !s.unexpected.is_empty() {
                    let _ = writeln!(out, "impossible outcomes observed:  {:?}", s.unexpected);
                }
            }
        }
        let _ = writeln!(out, "result: {}", if self.holds { "holds" } else { "fails" });
        out
    }
}
