mod common;

use common::{process_battery, process_instance, ProcessKind, BATTERY_SEED};
use perfcorr::linalg::{unitarity_defect, Observable};
use perfcorr::measurement::{is_precise_for_all_states, output_distribution, povm_of, precise_measurement_report};
use perfcorr::models::{build_von_neumann, verify_von_neumann};
use perfcorr::sampling::{random_unitary, seeded_rng};
use perfcorr::tolerance::Tolerances;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn von_neumann_models_satisfy_the_defining_relation(
        seed in any::<u64>(),
        dim in 2usize..=5,
        xi_index in 0usize..5,
        degenerate in any::<bool>(),
    ) {
        let mut rng = seeded_rng(seed);
        let v = random_unitary(dim, &mut rng);
        let mut values: Vec<f64> = (0..dim).map(|k| k as f64 * 0.75 - 1.0).collect();
        if degenerate {
            values[dim - 1] = values[0];
        }
        let a = Observable::new(common::conjugated_diagonal(&v, &values)).unwrap();
        let basis: Vec<_> = (0..dim).map(|j| v.column(j).into_owned()).collect();
        let m = build_von_neumann(&a, &basis, xi_index % dim).unwrap();
        prop_assert!(m.defining_relation_defect() <= 1e-9);
        prop_assert!(unitarity_defect(m.process.unitary()) <= 1e-12);
        prop_assert!(is_precise_for_all_states(&m.process, &a, Tolerances::default()).unwrap());
        prop_assert!(verify_von_neumann(&m, 8, seed, Tolerances::default()).unwrap().all_pass());
    }

    #[test]
    fn output_distribution_routes_agree(index in 0usize..4000) {
        let inst = process_instance(index, BATTERY_SEED ^ 0x77);
        let d = output_distribution(&inst.process, &inst.psi).unwrap();
        prop_assert!(d.max_route_disagreement() <= 1e-9);
        prop_assert!((d.total() - 1.0).abs() <= 1e-9);
        prop_assert!(d.probabilities.iter().all(|&p| p >= -1e-12));
    }

    #[test]
    fn povms_are_well_formed(index in 0usize..4000) {
        let inst = process_instance(index, BATTERY_SEED ^ 0x99);
        let povm = povm_of(&inst.process);
        prop_assert!(povm.min_eigenvalue() >= -1e-9);
        prop_assert!(povm.completeness_defect() <= 1e-9);
    }
}

#[test]
fn process_kinds_have_the_intended_verdicts() {
    let tol = Tolerances::default();
    for inst in process_battery(96) {
        let r = precise_measurement_report(&inst.process, &inst.a, &inst.psi, tol, 8, 1).unwrap();
        assert!(r.all_agree(), "{:?}: {r:?}", inst.kind);
        let expected = match inst.kind {
            ProcessKind::VonNeumann
            | ProcessKind::VonNeumannDegenerate
            | ProcessKind::IdentityConstantObservable
            | ProcessKind::PartiallyScrambledInside => Some(true),
            ProcessKind::IdentityInteraction | ProcessKind::Perturbed | ProcessKind::Haar => Some(false),
            // a one-dimensional scrambled block is a phase, which commutes with A
            ProcessKind::PartiallyScrambledOutside => None,
        };
        if let Some(expected) = expected {
            assert_eq!(r.cond_i, expected, "{:?}", inst.kind);
        }
    }
}
