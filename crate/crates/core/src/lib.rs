//! Perfect correlation between (possibly noncommuting) observables, and precise measurement
//! of an observable in a given state, for finite-dimensional quantum systems.
//!
//! * [`linalg`]: Hermitian spectral decompositions, tensor products, partial traces.
//! * [`correlation`]: joint term table, joint distributivity, perfect correlation, `‖Xψ - Yψ‖`.
//! * [`cyclic`]: cyclic subspaces and the equivalent characterizations of perfect correlation.
//! * [`measurement`]: measuring processes, POVMs, the Born formula, precise measurement.
//! * [`models`]: von Neumann's model and the Heisenberg-pair counterexamples.
//! * [`simulator`]: seeded Monte-Carlo sampling of consecutive and indirect measurements.
//!
//! ```
//! use perfcorr::prelude::*;
//!
//! let f = ozawa_counterexample();
//! let verdict = is_perfectly_correlated(&f.x, &f.y, &f.psi, Tolerances::default()).unwrap();
//! assert!(verdict.rms_difference < 1e-12);
//! assert!(!verdict.jointly_distributed && !verdict.perfectly_correlated);
//! ```

pub mod correlation;
pub mod cyclic;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod models;
pub mod sampling;
pub mod schema;
pub mod simulator;
pub mod tolerance;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::correlation::{
        is_jointly_distributed, is_perfectly_correlated, joint_rms_criterion_holds, joint_term_table, rms_difference,
        CorrelationVerdict, JointTermTable,
    };
    pub use crate::cyclic::{
        common_eigenstate_decomposition, correlation_conditions, cyclic_subspace, equal_distribution_certificate,
        CorrelationConditions, CyclicSubspace,
    };
    pub use crate::error::{Error, Result};
    pub use crate::linalg::{Matrix, Observable, StateVector, Vector};
    pub use crate::measurement::{
        heisenberg_meter, is_precise_for_all_states, output_distribution, povm_of, povm_perfectly_correlated,
        precise_measurement_report, satisfies_bsf, MeasuringProcess, Povm, PreciseMeasurementReport,
    };
    pub use crate::models::{
        build_von_neumann, ozawa_counterexample, product_state_example, verify_von_neumann, von_neumann_for,
        HeisenbergPairFixture, VonNeumannModel,
    };
    pub use crate::simulator::{simulate_consecutive, simulate_indirect, SampleReport};
    pub use crate::tolerance::Tolerances;
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/observables.md")]
    mod observables {}
    #[doc = include_str!("../../../book/src/perfect-correlation.md")]
    mod perfect_correlation {}
    #[doc = include_str!("../../../book/src/cyclic-subspaces.md")]
    mod cyclic_subspaces {}
    #[doc = include_str!("../../../book/src/measuring-processes.md")]
    mod measuring_processes {}
    #[doc = include_str!("../../../book/src/von-neumann.md")]
    mod von_neumann {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
