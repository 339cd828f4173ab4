//! Checks for the Bloch-sphere input grids, the fidelity averaging and
//! dispersion reports, and the time-resolved cluster fidelity.

mod common;

use common::assert_close;
use mbqc_sim::channels::Channel;
use mbqc_sim::cluster::InputState;
use mbqc_sim::closedform::closed_form_average;
use mbqc_sim::fidelity::{
    average_gate_fidelity, cluster_average_fidelity, cluster_state_fidelity, stddev_map,
    BlochGrid, GridScheme,
};
use mbqc_sim::mbqc::{gate_state_fidelity, BranchConvention, GateKind, MeasurementSchedule};
use std::f64::consts::PI;

#[test]
fn default_grid_has_the_documented_shape() {
    let grid = BlochGrid::default();
    assert_eq!((grid.theta_count, grid.phi_count), (101, 100));
    assert_eq!(grid.total(), 10100);
    let states = grid.states().unwrap();
    assert_eq!(states.len(), 10100);
    assert_close(states[0].theta(), 0.0, 0.0, "first θ");
    assert_close(states[0].phi(), 0.0, 0.0, "first φ");
    // θ spans [0, π] inclusive; φ spans [0, 2π) half-open.
    let last = states.last().unwrap();
    assert_close(last.theta(), PI, 1e-15, "last θ");
    assert_close(last.phi(), 2.0 * PI * 99.0 / 100.0, 1e-12, "last φ");
    assert!(BlochGrid::new(0, 5, GridScheme::AngleGrid).is_err());
    assert!(BlochGrid::new(5, 0, GridScheme::AngleGrid).is_err());
}

#[test]
fn single_theta_grid_degenerates_to_the_pole() {
    let grid = BlochGrid::new(1, 8, GridScheme::AngleGrid).unwrap();
    for s in grid.states().unwrap() {
        assert_close(s.theta(), 0.0, 0.0, "pole θ");
    }
}

#[test]
fn sphere_scheme_is_valid_and_deterministic() {
    let grid = BlochGrid::new(10, 10, GridScheme::SphereUniform).unwrap();
    let a = grid.states().unwrap();
    let b = grid.states().unwrap();
    assert_eq!(a.len(), 100);
    for (x, y) in a.iter().zip(b.iter()) {
        assert_close(x.theta(), y.theta(), 0.0, "deterministic θ");
        assert_close(x.phi(), y.phi(), 0.0, "deterministic φ");
    }
    // Area-uniform points should sample both hemispheres.
    let north = a.iter().filter(|s| s.theta() < PI / 2.0).count();
    assert!((40..=60).contains(&north), "hemisphere balance: {north}/100 northern");
    assert_eq!(grid.echo(), "grid=10x10 scheme=sphere");
}

#[test]
fn noiseless_average_is_exactly_one_with_zero_dispersion() {
    let grid = BlochGrid::new(11, 10, GridScheme::AngleGrid).unwrap();
    let schedule = MeasurementSchedule::gate([0.0; 4]).unwrap();
    for gate in [GateKind::X, GateKind::Z] {
        let report = average_gate_fidelity(
            gate,
            &Channel::default_ad(),
            &schedule,
            &grid,
            BranchConvention::Weighted,
        )
        .unwrap();
        assert_close(report.value, 1.0, 1e-12, "noiseless mean");
        assert_close(report.std_dev, 0.0, 1e-12, "noiseless spread");
        assert_close(report.max_dev, 0.0, 1e-12, "noiseless max deviation");
        assert!(report.per_state.is_none());
    }
}

#[test]
fn dispersion_report_is_consistent_with_its_own_points() {
    let pd = Channel::default_pd();
    let schedule = MeasurementSchedule::from_codes(&pd, &[1, 2, 2, 2]).unwrap();
    let grid = BlochGrid::new(9, 8, GridScheme::AngleGrid).unwrap();
    let report =
        stddev_map(GateKind::Z, &pd, &schedule, &grid, BranchConvention::Weighted).unwrap();
    let points = report.per_state.as_ref().expect("map retains points");
    assert_eq!(points.len(), 72);
    let mean = points.iter().map(|p| p.fidelity).sum::<f64>() / points.len() as f64;
    assert_close(report.value, mean, 1e-12, "mean consistency");
    let max = points.iter().map(|p| (p.fidelity - mean).abs()).fold(0.0, f64::max);
    assert_close(report.max_dev, max, 1e-12, "max-deviation consistency");
    assert!(report.mean_abs_dev <= report.std_dev + 1e-15, "mean |dev| ≤ RMS dev");
    assert!(report.std_dev <= report.max_dev + 1e-15, "RMS dev ≤ max dev");
    assert!(report.params.contains("channel=pd"));
    assert!(report.params.contains("gate=z"));
}

#[test]
fn x_and_z_gates_have_identical_fidelity_pointwise() {
    let ad = Channel::default_ad();
    let pd = Channel::default_pd();
    let sa = MeasurementSchedule::from_codes(&ad, &[1, 2, 2, 3]).unwrap();
    let sp = MeasurementSchedule::from_codes(&pd, &[1, 1, 2, 3]).unwrap();
    for (channel, schedule) in [(&ad, &sa), (&pd, &sp)] {
        for input in [
            InputState::plus(),
            InputState::new(0.3, 1.0).unwrap(),
            InputState::new(2.8, 4.4).unwrap(),
        ] {
            let fx = gate_state_fidelity(&input, GateKind::X, channel, schedule,
                BranchConvention::Weighted)
                .unwrap();
            let fz = gate_state_fidelity(&input, GateKind::Z, channel, schedule,
                BranchConvention::Weighted)
                .unwrap();
            assert_close(fx, fz, 1e-13, "X vs Z");
        }
    }
}

#[test]
fn cluster_fidelity_starts_at_one_and_decays() {
    let input = InputState::plus();
    for channel in [Channel::default_ad(), Channel::default_pd()] {
        assert_close(cluster_state_fidelity(&input, 0.0, &channel).unwrap(), 1.0, 1e-12, "t=0");
        let f = cluster_state_fidelity(&input, 1.0, &channel).unwrap();
        assert!((0.0..1.0).contains(&f), "decayed fidelity {f}");
        assert!(cluster_state_fidelity(&input, -1.0, &channel).is_err());
    }
}

#[test]
fn cluster_landmark_pattern_smoke() {
    // Full neighbor comparisons run in the acceptance suite; here just the
    // grossest features on a coarse grid.
    let grid = BlochGrid::new(7, 6, GridScheme::AngleGrid).unwrap();
    let ad = Channel::default_ad();
    let d = match &ad {
        Channel::Ad(p) => p.d(),
        _ => unreachable!(),
    };
    let at = |t: f64, ch: &Channel| cluster_average_fidelity(t, ch, &grid).unwrap().value;
    assert!(at(2.0 * PI / d, &ad) > 0.8, "revival peak is high");
    assert!(at(3.0 * PI / d, &ad) < 0.1, "collapse valley is deep");
    let pd = Channel::default_pd();
    assert!(at(PI, &pd) > 0.8, "dephasing revival at π");
    assert!(at(1.5 * PI, &pd) < 0.01, "dephasing valley at 3π/2");
}

#[test]
fn averages_are_stable_under_grid_refinement() {
    // Refining the angle grid moves the mean by O(1/nθ); at the default
    // grid the residual sits well inside the tables' ±0.005 resolution.
    // Measured AD 1-1-2-3 sequence: 21×20 → 0.7257, 41×40 → 0.7207,
    // 101×100 → 0.7176, 201×200 → 0.7166.
    let ad = Channel::default_ad();
    let schedule = MeasurementSchedule::from_codes(&ad, &[1, 1, 2, 3]).unwrap();
    let value = |nt: usize, np: usize| {
        let grid = BlochGrid::new(nt, np, GridScheme::AngleGrid).unwrap();
        closed_form_average(&ad, &schedule, &grid).unwrap()
    };
    assert_close(value(41, 40), value(101, 100), 5e-3, "coarse vs default");
    assert_close(value(101, 100), value(201, 200), 2e-3, "default vs fine");
    // The simulation inherits the same grid limit (spot check on the coarse
    // grid, where the full sweep is cheap).
    let coarse = BlochGrid::new(21, 20, GridScheme::AngleGrid).unwrap();
    let sim = average_gate_fidelity(GateKind::Z, &ad, &schedule, &coarse,
        BranchConvention::Weighted)
        .unwrap()
        .value;
    assert_close(sim, value(21, 20), 1e-10, "simulation matches on a shared grid");
}
