use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::pulse::{ConstraintSpec, DeviceModel, InstructionKind};
use crate::qcore::{fidelity, StateVector};
use crate::sim::PropagationLevel;

use super::*;

fn device(n: usize) -> DeviceModel {
    DeviceModel::ideal_line(n)
}

/// Closed-form parameter counts for the numbered design spaces.
fn formula(id: u8, n: usize, l: usize) -> usize {
    let (n, l) = (n as i64, l as i64);
    (match id {
        1 | 7 => (5 * n - 3) * l,
        2 | 8 => 2 * (2 * n - 1) * l,
        3 | 9 => (6 * n - 3) * l,
        4 | 10 => (5 * n - 2) * l,
        5 | 11 => (9 * n - 7) * l,
        6 | 12 => (8 * n - 6) * l,
        _ => unreachable!(),
    }) as usize
}

#[test]
fn table_counts_match_formulas_exactly() {
    for id in 1..=6u8 {
        for n in 2..=6 {
            for l in 1..=3 {
                let tid = TemplateId::from_pulse_number(id).unwrap();
                let (params, crs, _depth) = param_count(tid, n, l).unwrap();
                assert_eq!(params, formula(id, n, l), "id {id} N{n} L{l}");
                assert_eq!(crs, (n - 1) * l, "id {id} N{n} L{l}");
            }
        }
    }
}

#[test]
fn fixing_cr_amplitude_removes_one_param_per_cr() {
    for (odd, even) in [(1u8, 2u8), (3, 4), (5, 6)] {
        for n in 2..=6 {
            for l in 1..=3 {
                assert_eq!(
                    formula(odd, n, l) - (n - 1) * l,
                    formula(even, n, l),
                    "ids {odd}/{even} N{n} L{l}"
                );
            }
        }
    }
}

#[test]
fn structural_counts_agree_with_layout() {
    // instantiated schedules carry exactly the declared number of CRs, and
    // the layout binds every free field exactly once
    let cspec = ConstraintSpec::unconstrained();
    for id in 1..=6u8 {
        let tid = TemplateId::from_pulse_number(id).unwrap();
        for n in [2, 4] {
            let spec = TemplateSpec::new(tid, n, 2).unwrap();
            let t = PulseTemplate::build(&spec).unwrap();
            let theta = t.reference_theta(&cspec, false);
            let schedule = t.instantiate(&theta, &device(n), &cspec).unwrap();
            let cr_count = schedule
                .instructions()
                .iter()
                .filter(|i| i.kind == InstructionKind::PlayCr)
                .count();
            assert_eq!(cr_count, t.n_cr());
            assert_eq!(t.n_params(), formula(id, n, 2));
        }
    }
}

#[test]
fn spec_anchor_counts() {
    // (ID1, N=4, L=1) → 17 params, 3 CRs
    let (p, c, _) = param_count(TemplateId::HardwareEfficient, 4, 1).unwrap();
    assert_eq!((p, c), (17, 3));
    // (ID5, N=2, L=1) → 11 params, 1 CR
    let (p, c, _) = param_count(TemplateId::BlockDressed, 2, 1).unwrap();
    assert_eq!((p, c), (11, 1));
    // (ID2, N=2, L=3) → 18 params, 3 CRs
    let (p, c, _) = param_count(TemplateId::HardwareEfficientFixCr, 2, 3).unwrap();
    assert_eq!((p, c), (18, 3));
    // ID6 N=3 L=1 → 18 params, 2 CRs
    let (p, c, _) = param_count(TemplateId::BlockDressedFixCr, 3, 1).unwrap();
    assert_eq!((p, c), (18, 2));
}

#[test]
fn dressed_and_blockpulse_structures() {
    let spec = TemplateSpec::new(TemplateId::Dressed2Q, 2, 1).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    assert_eq!(t.n_params(), 11);
    assert_eq!(t.n_cr(), 1);
    assert_eq!(t.n_sqp(), 4);

    let spec = TemplateSpec::new(TemplateId::Blockpulse2Q, 2, 1).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    assert_eq!(t.n_params(), 18);
    assert_eq!(t.n_cr(), 2);
    assert_eq!(t.n_sqp(), 6);
}

#[test]
fn table_style_fix_variants_drop_one_param_per_cr() {
    for field in [FixedField::CrAmplitude, FixedField::CrAngle, FixedField::CrDuration] {
        let spec = TemplateSpec::new(TemplateId::Dressed2Q, 2, 1)
            .unwrap()
            .with_fixed(field);
        assert_eq!(PulseTemplate::build(&spec).unwrap().n_params(), 10);

        let spec = TemplateSpec::new(TemplateId::Blockpulse2Q, 2, 1)
            .unwrap()
            .with_fixed(field);
        assert_eq!(PulseTemplate::build(&spec).unwrap().n_params(), 16);
    }
}

#[test]
fn block_depth_metadata_matches_dressing_structure() {
    for n in 2..=5 {
        let (_, _, depth) = param_count(TemplateId::BlockDressed, n, 1).unwrap();
        assert_eq!(depth, (2 * n - 1) as u32, "N{n}");
    }
    for l in 1..=3 {
        let (_, _, depth) = param_count(TemplateId::HardwareEfficient, 3, l).unwrap();
        assert_eq!(depth, (3 * l) as u32, "L{l}");
    }
}

#[test]
fn random_pulse_template_entry_point() {
    let spec = random_pulse_template(1, 4, 1, 99).unwrap();
    assert_eq!(spec.id, TemplateId::Random(7));
    assert_eq!(spec.seed, 99);
    let t = PulseTemplate::build(&spec).unwrap();
    assert_eq!(t.n_params(), 17);
    assert_eq!(t.n_cr(), 3);
    assert!(random_pulse_template(0, 4, 1, 0).is_err());
    assert!(random_pulse_template(7, 4, 1, 0).is_err());
}

#[test]
fn random_templates_match_budgets_and_are_seed_deterministic() {
    let cspec = ConstraintSpec::unconstrained();
    for k in 7..=12u8 {
        for n in [2, 3, 5] {
            for l in [1, 3] {
                let (p, c, _) = param_count(TemplateId::Random(k), n, l).unwrap();
                assert_eq!(p, formula(k, n, l), "RAND_{k} N{n} L{l}");
                assert_eq!(c, (n - 1) * l);
            }
        }
        let spec = TemplateSpec::new(TemplateId::Random(k), 4, 2)
            .unwrap()
            .with_seed(42);
        let a = PulseTemplate::build(&spec).unwrap();
        let b = PulseTemplate::build(&spec).unwrap();
        let theta = a.reference_theta(&cspec, false);
        let sa = a.instantiate(&theta, &device(4), &cspec).unwrap();
        let sb = b.instantiate(&theta, &device(4), &cspec).unwrap();
        assert_eq!(sa, sb, "same seed must rebuild the same template");

        let other = PulseTemplate::build(&spec.clone().with_seed(43)).unwrap();
        assert_eq!(other.n_params(), a.n_params());
        assert_eq!(other.n_cr(), a.n_cr());
    }
}

#[test]
fn instantiate_rejects_wrong_length_and_bad_amplitude() {
    let cspec = ConstraintSpec::unconstrained();
    let spec = TemplateSpec::new(TemplateId::HardwareEfficient, 2, 1).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    assert!(matches!(
        t.instantiate(&[0.0; 3], &device(2), &cspec),
        Err(TemplateError::LengthMismatch { expected: 7, actual: 3 })
    ));
    let mut theta = t.reference_theta(&cspec, false);
    theta[0] = 7.5;
    assert!(matches!(
        t.instantiate(&theta, &device(2), &cspec),
        Err(TemplateError::ConstraintViolation { index: 0, .. })
    ));
}

#[test]
fn durations_snap_to_grid_on_instantiation() {
    let cspec = ConstraintSpec::unconstrained();
    let spec = TemplateSpec::new(TemplateId::DecayLayer, 2, 1).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    let mut theta = t.reference_theta(&cspec, false);
    // slot 2 is the first SQP's duration
    assert_eq!(t.layout().slots()[2].field, ParamField::Duration);
    theta[2] = 300.0; // snaps to 304
    let schedule = t.instantiate(&theta, &device(2), &cspec).unwrap();
    assert_eq!(schedule.instructions()[0].params.duration, 304);

    // the relaxed path keeps the raw value
    let relaxed = t.instantiate_relaxed(&theta, &device(2)).unwrap();
    assert_eq!(relaxed.instructions()[0].params.duration, 300);
}

#[test]
fn sampled_parameters_always_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cspec = crate::pulse::constraint_spec_for("ibmq_guadalupe");
    for id in [TemplateId::DecayLayer, TemplateId::BlockDressedFixCr, TemplateId::Random(9)] {
        let spec = TemplateSpec::new(id, 3, 2).unwrap().with_seed(5);
        let t = Template::build(&spec).unwrap();
        for _ in 0..200 {
            let theta = sample_parameters(&t, &cspec, &mut rng);
            assert!(t.instantiate(&theta, &device(3), &cspec).unwrap().is_some());
        }
    }
}

#[test]
fn fixed_cr_templates_sample_no_cr_amplitude() {
    // ID2's parameter vector carries SQP amplitudes only: N·L amplitude
    // slots, none bound to a CR instruction
    let spec = TemplateSpec::new(TemplateId::HardwareEfficientFixCr, 3, 2).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    let amp_slots: Vec<_> = t
        .layout()
        .slots()
        .iter()
        .filter(|s| s.field == ParamField::Amplitude)
        .collect();
    assert_eq!(amp_slots.len(), 3 * 2);
    for slot in amp_slots {
        assert_eq!(t.instruction_kind(slot.instruction), InstructionKind::PlaySqp);
    }
}

#[test]
fn sampled_angles_are_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cspec = ConstraintSpec::unconstrained();
    let spec = TemplateSpec::new(TemplateId::Pulse1QAngle, 1, 1).unwrap();
    let t = Template::build(&spec).unwrap();
    let n = 10_000;
    let mean: f64 = (0..n)
        .map(|_| sample_parameters(&t, &cspec, &mut rng)[0])
        .sum::<f64>()
        / n as f64;
    // uniform on [0, 2π): mean π, σ_mean = 2π/√(12n)
    let sigma_mean = std::f64::consts::TAU / (12.0 * n as f64).sqrt();
    assert!(
        (mean - std::f64::consts::PI).abs() < 3.0 * sigma_mean,
        "mean {mean} too far from π"
    );
}

#[test]
fn rz_baseline_only_shifts_phase() {
    let d = device(1);
    let cspec = ConstraintSpec::unconstrained();
    let spec = TemplateSpec::new(TemplateId::Rz, 1, 1).unwrap();
    let t = Template::build(&spec).unwrap();
    let zero = StateVector::zero(1).unwrap();
    for theta in [0.3, 2.0, 5.5] {
        let out = t
            .prepare_state(&[theta], &d, &cspec, PropagationLevel::default())
            .unwrap();
        assert!((fidelity(&out, &zero).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn zyz_with_zero_z_angles_is_a_y_rotation() {
    let d = device(1);
    let cspec = ConstraintSpec::unconstrained();
    let zyz = Template::build(&TemplateSpec::new(TemplateId::Zyz, 1, 1).unwrap()).unwrap();
    let theta = 1.234;
    let out = zyz
        .prepare_state(&[0.0, theta, 0.0], &d, &cspec, PropagationLevel::default())
        .unwrap();
    assert!((out.amplitudes()[0].re - (theta / 2.0).cos()).abs() < 1e-12);
    assert!((out.amplitudes()[1].re - (theta / 2.0).sin()).abs() < 1e-12);
}

#[test]
fn rxcx_baseline_anchors() {
    let d = device(2);
    let spec = TemplateSpec::new(TemplateId::RxCx2Q, 2, 1).unwrap();
    let g = GateCircuit::build(&spec).unwrap();
    assert_eq!(g.n_params(), 4);
    assert_eq!(g.n_two_qubit_gates(), 1);
    assert_eq!(g.duration_dt(&d), 1696);
}

#[test]
fn universal2q_baseline_anchors() {
    let d = device(2);
    let spec = TemplateSpec::new(TemplateId::Universal2Q, 2, 1).unwrap();
    let g = GateCircuit::build(&spec).unwrap();
    assert_eq!(g.n_params(), 15);
    assert_eq!(g.n_two_qubit_gates(), 3);
    assert_eq!(g.duration_dt(&d), 4448);
}

#[test]
fn cx_flips_target_when_control_set() {
    let d = device(2);
    let cspec = ConstraintSpec::unconstrained();
    let g = Template::build(&TemplateSpec::new(TemplateId::RxCx2Q, 2, 1).unwrap()).unwrap();
    // Rx(π) on qubit 0 then CX(0→1) with trailing identity rotations: |00⟩ → |11⟩
    let out = g
        .prepare_state(
            &[std::f64::consts::PI, 0.0, 0.0, 0.0],
            &d,
            &cspec,
            PropagationLevel::default(),
        )
        .unwrap();
    let target = StateVector::basis_state(2, 3).unwrap();
    assert!(fidelity(&out, &target).unwrap() > 1.0 - 1e-12);
}

#[test]
fn twolocal_duration_scales_with_entanglement_block() {
    let d = device(4);
    let spec = TemplateSpec::new(TemplateId::TwoLocal, 4, 3).unwrap();
    let g = GateCircuit::build(&spec).unwrap();
    // 4 Ry columns (320 each) + 3 reps × 6 CZ layers (1056 each)
    assert_eq!(g.duration_dt(&d), 4 * 320 + 18 * 1056);
    assert_eq!(g.n_params(), 16);
}

#[test]
fn pulse_template_duration_uses_critical_path() {
    let cspec = ConstraintSpec::unconstrained();
    let spec = TemplateSpec::new(TemplateId::HardwareEfficient, 2, 1).unwrap();
    let t = PulseTemplate::build(&spec).unwrap();
    let mut theta = t.reference_theta(&cspec, false);
    // CR duration slot is the last one
    let last = theta.len() - 1;
    assert_eq!(t.layout().slots()[last].field, ParamField::Duration);
    theta[last] = 256.0;
    let schedule = t.instantiate(&theta, &device(2), &cspec).unwrap();
    assert_eq!(schedule.duration_dt(), 160 + 256);
}

#[test]
fn gate_unitary_matches_prepared_state() {
    let d = device(2);
    let cspec = ConstraintSpec::unconstrained();
    let t = Template::build(&TemplateSpec::new(TemplateId::Universal2Q, 2, 1).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let theta = sample_parameters(&t, &cspec, &mut rng);
    let u = t.unitary(&theta, &d, &cspec).unwrap();
    let state = t
        .prepare_state(&theta, &d, &cspec, PropagationLevel::default())
        .unwrap();
    for i in 0..4 {
        assert!((u.entries()[[i, 0]] - state.amplitudes()[i]).norm() < 1e-12);
    }
}
