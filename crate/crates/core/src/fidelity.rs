//! Fidelity analytics: Bloch-sphere input grids, average gate fidelity,
//! resource fidelity, time-resolved cluster fidelity, and dispersion
//! statistics.

use crate::channels::Channel;
use crate::cluster::{cluster_vector, InputState};
use crate::error::{Error, Result};
use crate::mbqc::{
    gate_state_fidelity, resource_fidelity, BranchConvention, GateKind, MeasurementSchedule,
    ResourceKind,
};
use crate::qstate::{apply_single_qubit, bit};
use num_complex::Complex64;

/// How input states are spread over the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridScheme {
    /// θ uniform on [0, π] inclusive, φ uniform on [0, 2π): a rectangular
    /// angle grid (the default 101 × 100 grid gives 10100 states).
    #[default]
    AngleGrid,
    /// Fibonacci-sphere points, mapped to (θ, φ): approximately
    /// area-uniform coverage with the same total count.
    SphereUniform,
}

impl GridScheme {
    pub fn name(&self) -> &'static str {
        match self {
            GridScheme::AngleGrid => "angles",
            GridScheme::SphereUniform => "sphere",
        }
    }
}

/// A Bloch-sphere sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlochGrid {
    pub theta_count: usize,
    pub phi_count: usize,
    pub scheme: GridScheme,
}

impl Default for BlochGrid {
    fn default() -> Self {
        BlochGrid { theta_count: 101, phi_count: 100, scheme: GridScheme::AngleGrid }
    }
}

impl BlochGrid {
    pub fn new(theta_count: usize, phi_count: usize, scheme: GridScheme) -> Result<Self> {
        if theta_count == 0 || phi_count == 0 {
            return Err(Error::invalid("grid counts must be positive"));
        }
        Ok(BlochGrid { theta_count, phi_count, scheme })
    }

    pub fn total(&self) -> usize {
        self.theta_count * self.phi_count
    }

    /// The input states of this grid, in a fixed deterministic order.
    pub fn states(&self) -> Result<Vec<InputState>> {
        let total = self.total();
        let mut out = Vec::with_capacity(total);
        match self.scheme {
            GridScheme::AngleGrid => {
                for i in 0..self.theta_count {
                    let theta = if self.theta_count == 1 {
                        0.0
                    } else {
                        std::f64::consts::PI * i as f64 / (self.theta_count - 1) as f64
                    };
                    for j in 0..self.phi_count {
                        let phi = 2.0 * std::f64::consts::PI * j as f64 / self.phi_count as f64;
                        out.push(InputState::new(theta.min(std::f64::consts::PI), phi)?);
                    }
                }
            }
            GridScheme::SphereUniform => {
                let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
                for k in 0..total {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / total as f64;
                    let theta = z.clamp(-1.0, 1.0).acos();
                    let phi = (2.0 * std::f64::consts::PI * (k as f64 / golden)).rem_euclid(
                        2.0 * std::f64::consts::PI,
                    );
                    out.push(InputState::new(theta, phi)?);
                }
            }
        }
        Ok(out)
    }

    pub fn echo(&self) -> String {
        format!("grid={}x{} scheme={}", self.theta_count, self.phi_count, self.scheme.name())
    }
}

/// One grid point's fidelity.
#[derive(Debug, Clone, Copy)]
pub struct PointFidelity {
    pub theta: f64,
    pub phi: f64,
    pub fidelity: f64,
}

/// A fidelity value with dispersion statistics and a parameter echo.
#[derive(Debug, Clone)]
pub struct FidelityReport {
    /// The mean fidelity.
    pub value: f64,
    /// Per-grid-point fidelities, when retained.
    pub per_state: Option<Vec<PointFidelity>>,
    /// Root-mean-square deviation from the mean.
    pub std_dev: f64,
    /// Mean absolute deviation from the mean.
    pub mean_abs_dev: f64,
    /// Maximum absolute deviation from the mean.
    pub max_dev: f64,
    /// Human-readable echo of the generating parameters.
    pub params: String,
}

fn report_from_points(
    points: Vec<PointFidelity>,
    retain: bool,
    params: String,
) -> FidelityReport {
    let n = points.len() as f64;
    let mean = points.iter().map(|p| p.fidelity).sum::<f64>() / n;
    let mut sq = 0.0;
    let mut abs = 0.0;
    let mut max: f64 = 0.0;
    for p in &points {
        let d = (p.fidelity - mean).abs();
        sq += d * d;
        abs += d;
        max = max.max(d);
    }
    FidelityReport {
        value: mean,
        per_state: if retain { Some(points) } else { None },
        std_dev: (sq / n).sqrt(),
        mean_abs_dev: abs / n,
        max_dev: max,
        params,
    }
}

fn gate_echo(
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    grid: &BlochGrid,
    convention: BranchConvention,
) -> String {
    let times: Vec<String> = schedule.times().iter().map(|t| format!("{t:.9}")).collect();
    format!(
        "{} gate={} schedule={} {} convention={}",
        channel_echo(channel),
        gate.name(),
        times.join(","),
        grid.echo(),
        convention.name()
    )
}

pub fn channel_echo(channel: &Channel) -> String {
    match channel {
        Channel::Ad(p) => format!("channel=ad lambda={} gamma0={}", p.lambda(), p.gamma0()),
        Channel::Pd(p) => format!("channel=pd a={} tau={}", p.a(), p.tau()),
    }
}

/// Average gate fidelity over a Bloch grid: mean over inputs of the overlap
/// of the protocol output with U|ψ_in⟩.
pub fn average_gate_fidelity(
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    grid: &BlochGrid,
    convention: BranchConvention,
) -> Result<FidelityReport> {
    let states = grid.states()?;
    let mut points = Vec::with_capacity(states.len());
    for s in &states {
        let f = gate_state_fidelity(s, gate, channel, schedule, convention)?;
        points.push(PointFidelity { theta: s.theta(), phi: s.phi(), fidelity: f });
    }
    Ok(report_from_points(points, false, gate_echo(gate, channel, schedule, grid, convention)))
}

/// Like `average_gate_fidelity` but retaining the full (θ, φ) → fidelity
/// surface for dispersion analysis.
pub fn stddev_map(
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    grid: &BlochGrid,
    convention: BranchConvention,
) -> Result<FidelityReport> {
    let states = grid.states()?;
    let mut points = Vec::with_capacity(states.len());
    for s in &states {
        let f = gate_state_fidelity(s, gate, channel, schedule, convention)?;
        points.push(PointFidelity { theta: s.theta(), phi: s.phi(), fidelity: f });
    }
    Ok(report_from_points(points, true, gate_echo(gate, channel, schedule, grid, convention)))
}

/// Resource preparation fidelity (no Bloch average — the input is |+⟩).
pub fn resource_gate_fidelity(
    kind: ResourceKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<FidelityReport> {
    let f = resource_fidelity(kind, channel, schedule, convention)?;
    let times: Vec<String> = schedule.times().iter().map(|t| format!("{t:.9}")).collect();
    Ok(FidelityReport {
        value: f,
        per_state: None,
        std_dev: 0.0,
        mean_abs_dev: 0.0,
        max_dev: 0.0,
        params: format!(
            "{} resource={} schedule={} convention={}",
            channel_echo(channel),
            kind.name(),
            times.join(","),
            convention.name()
        ),
    })
}

/// Overlap of the noisy cluster (all five qubits evolved to the same time t)
/// with the ideal cluster, for one input.
pub fn cluster_state_fidelity(input: &InputState, t: f64, channel: &Channel) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::invalid("time must be ≥ 0"));
    }
    let psi = cluster_vector(input);
    let pair = channel.kraus(t);
    let flats = pair.flat();
    let base: [Complex64; 32] = std::array::from_fn(|i| psi[i]);
    let mut f = 0.0;
    for combo in 0..32usize {
        let mut v = base;
        for q in 1..=5usize {
            apply_single_qubit(&mut v, &flats[bit(combo, q, 5)], q, 5);
        }
        // ⟨Ψ| M |Ψ⟩ for this Kraus combination.
        let mut dot = Complex64::default();
        for i in 0..32 {
            dot += base[i].conj() * v[i];
        }
        f += dot.norm_sqr();
    }
    Ok(f)
}

/// Grid-averaged overlap of the noisy cluster with the ideal cluster at
/// time t.
pub fn cluster_average_fidelity(
    t: f64,
    channel: &Channel,
    grid: &BlochGrid,
) -> Result<FidelityReport> {
    let states = grid.states()?;
    let mut points = Vec::with_capacity(states.len());
    for s in &states {
        let f = cluster_state_fidelity(s, t, channel)?;
        points.push(PointFidelity { theta: s.theta(), phi: s.phi(), fidelity: f });
    }
    Ok(report_from_points(
        points,
        false,
        format!("{} t={:.9} {}", channel_echo(channel), t, grid.echo()),
    ))
}
