//! Checks for the analytical fidelity expressions: limiting values,
//! symmetries, bounds, the dephasing second-measurement curve, and
//! per-input agreement with the full simulation.

mod common;

use common::assert_close;
use mbqc_sim::channels::Channel;
use mbqc_sim::closedform::{
    closed_form_average, fm, fm_ad, fm_pd, fpd_second_measurement, schedule_factors,
};
use mbqc_sim::fidelity::{BlochGrid, GridScheme};
use mbqc_sim::mbqc::{gate_state_fidelity, BranchConvention, GateKind, MeasurementSchedule};
use mbqc_sim::reference::{code_label, gate_codes, resource_codes, GATE_TABLE, RESOURCE_TABLE};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    /// Unit memory factors mean no noise: the expressions collapse to 1.
    #[test]
    fn unit_factors_give_unit_fidelity(theta in 0.0f64..=PI, phi in 0.0f64..6.283) {
        prop_assert!((fm_ad(theta, phi, [1.0; 4]) - 1.0).abs() <= 1e-12);
        prop_assert!((fm_pd(theta, phi, [1.0; 4]) - 1.0).abs() <= 1e-12);
    }

    /// The expressions stay inside [0, 1] across the whole factor space.
    #[test]
    fn expressions_stay_in_the_unit_interval(
        theta in 0.0f64..=PI,
        phi in 0.0f64..6.283,
        p in prop::collection::vec(0.0f64..=1.0, 4),
        l in prop::collection::vec(-1.0f64..=1.0, 4),
    ) {
        let fa = fm_ad(theta, phi, [p[0], p[1], p[2], p[3]]);
        let fp = fm_pd(theta, phi, [l[0], l[1], l[2], l[3]]);
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&fa), "AD value {fa}");
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&fp), "PD value {fp}");
    }

    /// φ enters only through cos(2φ), so φ → 2π−φ and φ → π−φ are symmetries.
    #[test]
    fn phi_reflection_symmetries(
        theta in 0.0f64..=PI,
        phi in 0.0f64..=PI,
        p in prop::collection::vec(0.05f64..=1.0, 4),
    ) {
        let f = [p[0], p[1], p[2], p[3]];
        let a = fm_ad(theta, phi, f);
        prop_assert!((a - fm_ad(theta, 2.0 * PI - phi, f)).abs() <= 1e-12);
        prop_assert!((a - fm_ad(theta, PI - phi, f)).abs() <= 1e-12);
        let b = fm_pd(theta, phi, f);
        prop_assert!((b - fm_pd(theta, 2.0 * PI - phi, f)).abs() <= 1e-12);
        prop_assert!((b - fm_pd(theta, PI - phi, f)).abs() <= 1e-12);
    }
}

/// The analytical expressions and the exact simulation describe the same
/// protocol: per-input agreement at near machine precision, including on
/// schedules away from the tabulated codes.
#[test]
fn analytical_and_simulated_fidelities_agree_pointwise() {
    let ad = Channel::default_ad();
    let pd = Channel::default_pd();
    let grid = BlochGrid::new(9, 8, GridScheme::AngleGrid).unwrap();
    let cases = [
        (&ad, MeasurementSchedule::from_codes(&ad, &[1, 2, 2, 3]).unwrap(), GateKind::X),
        (&pd, MeasurementSchedule::from_codes(&pd, &[1, 1, 2, 2]).unwrap(), GateKind::Z),
        (&ad, MeasurementSchedule::gate([3.0, 7.0, 7.0, 11.0]).unwrap(), GateKind::Z),
        (&pd, MeasurementSchedule::gate([1.0, 2.0, 2.5, 4.0]).unwrap(), GateKind::X),
    ];
    for (channel, schedule, gate) in cases {
        let factors = schedule_factors(channel, &schedule).unwrap();
        let mut worst = 0.0f64;
        for s in grid.states().unwrap() {
            let sim = gate_state_fidelity(&s, gate, channel, &schedule,
                BranchConvention::Weighted)
                .unwrap();
            let ana = fm(channel, s.theta(), s.phi(), factors);
            worst = worst.max((sim - ana).abs());
        }
        assert!(worst <= 1e-12, "max |simulation − analytical| = {worst:.3e}");
    }
}

#[test]
fn grid_averages_reproduce_tabulated_spot_values() {
    let grid = BlochGrid::default();
    let ad = Channel::default_ad();
    let pd = Channel::default_pd();
    let sa = MeasurementSchedule::from_codes(&ad, &[1, 1, 1, 1]).unwrap();
    assert_close(closed_form_average(&ad, &sa, &grid).unwrap(), 0.958, 5e-3, "AD 1-1-1-1");
    let sp = MeasurementSchedule::from_codes(&pd, &[1, 2, 2, 2]).unwrap();
    assert_close(closed_form_average(&pd, &sp, &grid).unwrap(), 0.902, 5e-3, "PD 1-2-2-2");
    let noiseless = MeasurementSchedule::gate([0.0; 4]).unwrap();
    assert_close(closed_form_average(&ad, &noiseless, &grid).unwrap(), 1.0, 1e-12, "noiseless");
}

#[test]
fn second_measurement_curve_landmarks() {
    assert_close(fpd_second_measurement(PI, 30.0).unwrap(), 0.293112, 1e-5, "left endpoint");
    assert_close(
        fpd_second_measurement(1.5 * PI, 30.0).unwrap(),
        0.901682,
        1e-5,
        "right endpoint",
    );
    // Long memory time: the curve approaches ¼ + ⅜·(1 − cos 2t₂).
    assert_close(fpd_second_measurement(1.25 * PI, 1e9).unwrap(), 0.625, 1e-6, "τ → ∞");
    // The curve is only derived on [π, 3π/2].
    assert!(fpd_second_measurement(0.9 * PI, 30.0).is_err());
    assert!(fpd_second_measurement(1.6 * PI, 30.0).is_err());
    assert!(fpd_second_measurement(1.2 * PI, 0.0).is_err());
}

#[test]
fn schedule_factors_are_memory_values_at_the_times() {
    let ad = Channel::default_ad();
    let schedule = MeasurementSchedule::gate([1.0, 2.0, 3.0, 4.0]).unwrap();
    let f = schedule_factors(&ad, &schedule).unwrap();
    for (i, t) in [1.0, 2.0, 3.0, 4.0].iter().enumerate() {
        assert_close(f[i], ad.memory(*t), 1e-15, "factor");
    }
    let rs = MeasurementSchedule::resource([1.0, 2.0, 3.0]).unwrap();
    assert!(schedule_factors(&ad, &rs).is_err(), "resource schedules have no gate closed form");
}

#[test]
fn reference_tables_enumerate_nondecreasing_codes_in_order() {
    let gc = gate_codes();
    assert_eq!(gc.len(), 15);
    for (row, codes) in GATE_TABLE.iter().zip(gc.iter()) {
        assert_eq!(&row.0, codes, "gate table order");
    }
    let rc = resource_codes();
    assert_eq!(rc.len(), 10);
    for (row, codes) in RESOURCE_TABLE.iter().zip(rc.iter()) {
        assert_eq!(&row.0, codes, "resource table order");
    }
    assert_eq!(code_label(&[1, 2, 3]), "1-2-3");
    assert_eq!(code_label(&[1, 1, 1, 1]), "1-1-1-1");
}
