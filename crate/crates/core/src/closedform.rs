//! Analytical per-input fidelity expressions for the measured gate protocols,
//! used as the independent oracle for the simulation and as the fast path for
//! table sweeps.
//!
//! The expressions are transcribed in complex arithmetic exactly as derived
//! (no algebraic simplification), then the real part is taken; transcription
//! errors therefore surface against the simulation rather than hide in both.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channels::Channel;
use crate::error::{Error, Result};
use crate::fidelity::BlochGrid;
use crate::mbqc::MeasurementSchedule;

fn alpha_beta(theta: f64, phi: f64) -> (Complex64, Complex64) {
    (
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    )
}

/// Per-input average gate fidelity under amplitude damping, as a function of
/// the four population factors pᵢ = p(tᵢ) (averaged over all 16 measurement
/// branches).
pub fn fm_ad(theta: f64, phi: f64, p: [f64; 4]) -> f64 {
    let [p1, p2, p3, p4] = p;
    let (al, be) = alpha_beta(theta, phi);
    let a2 = (al * al).re;
    let b2 = be.norm_sqr();
    let s24 = (p2 * p4).sqrt();
    let s134 = (p1 * p3 * p4).sqrt();
    let expr = Complex64::new(a2, 0.0)
        * (Complex64::new(a2 * (p4 * s24 + 1.0), 0.0)
            + Complex64::new(2.0 * b2 * (s24 * (s134 - p4) + s134 + 1.0), 0.0)
            + (-be * be - be.conj() * be.conj()) * Complex64::new((s24 - 1.0) * s134, 0.0))
        + Complex64::new(b2 * b2 * (p4 * s24 + 1.0), 0.0);
    0.5 * expr.re
}

/// Per-input average gate fidelity under phase damping, as a function of the
/// four coherence factors Lᵢ = L(tᵢ).
pub fn fm_pd(theta: f64, phi: f64, l: [f64; 4]) -> f64 {
    let [l1, l2, l3, l4] = l;
    let (al, be) = alpha_beta(theta, phi);
    let a2 = (al * al).re;
    let b2 = be.norm_sqr();
    let expr = Complex64::new((l2 * l4 + 1.0) * (a2 * a2 + b2 * b2), 0.0)
        + Complex64::new(
            2.0 * a2 * b2 * (l2 * l4 * (l1 * l3 * l4 - 1.0) + l1 * l3 * l4 + 1.0),
            0.0,
        )
        + Complex64::new(a2 * l1 * l3 * l4, 0.0)
            * (be * be + be.conj() * be.conj())
            * Complex64::new(1.0 - l2 * l4, 0.0);
    0.5 * expr.re
}

/// The dephasing average gate fidelity as a function of the second
/// measurement time alone, with t₁ = π and t₃ = t₄ = 3π/2:
/// F ≈ ¼ + (¼ + ⅛·e^{−2π/τ})·[1 − cos(2t₂)·e^{−(2t₂+3π)/4τ}],
/// valid on t₂ ∈ [π, 3π/2].
pub fn fpd_second_measurement(t2: f64, tau: f64) -> Result<f64> {
    if !(PI..=1.5 * PI).contains(&t2) {
        return Err(Error::invalid(format!("t₂ = {t2} outside [π, 3π/2]")));
    }
    if !(tau > 0.0) {
        return Err(Error::invalid("τ must be positive"));
    }
    let amp = 0.25 + 0.125 * (-2.0 * PI / tau).exp();
    Ok(0.25 + amp * (1.0 - (2.0 * t2).cos() * (-(2.0 * t2 + 3.0 * PI) / (4.0 * tau)).exp()))
}

/// The four memory factors of a gate schedule: p(tᵢ) or L(tᵢ).
pub fn schedule_factors(channel: &Channel, schedule: &MeasurementSchedule) -> Result<[f64; 4]> {
    if !schedule.is_gate() {
        return Err(Error::invalid("closed forms take a 4-time schedule"));
    }
    let t = schedule.times();
    Ok([
        channel.memory(t[0]),
        channel.memory(t[1]),
        channel.memory(t[2]),
        channel.memory(t[3]),
    ])
}

/// The closed-form per-input fidelity for the given channel.
pub fn fm(channel: &Channel, theta: f64, phi: f64, factors: [f64; 4]) -> f64 {
    match channel {
        Channel::Ad(_) => fm_ad(theta, phi, factors),
        Channel::Pd(_) => fm_pd(theta, phi, factors),
    }
}

/// The grid-averaged closed-form gate fidelity for a schedule.
pub fn closed_form_average(
    channel: &Channel,
    schedule: &MeasurementSchedule,
    grid: &BlochGrid,
) -> Result<f64> {
    let factors = schedule_factors(channel, schedule)?;
    let states = grid.states()?;
    let sum: f64 = states
        .iter()
        .map(|s| fm(channel, s.theta(), s.phi(), factors))
        .sum();
    Ok(sum / states.len() as f64)
}
