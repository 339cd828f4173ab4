//! The measurement-based computation engine: noisy evolution of the cluster,
//! σx-basis projective measurements at scheduled times, byproduct corrections,
//! and assembly of the output states of the gate protocol (qubit 5) and the
//! resource-preparation protocol (qubits 1 and 5).
//!
//! Timing model: the qubit measured at time t receives its one-shot channel
//! evaluated at t; unmeasured qubits (qubit 5 in the gate protocol, qubits 1
//! and 5 in the resource protocol) receive the channel evaluated at the last
//! scheduled measurement time.

use num_complex::Complex64;

use crate::channels::{Channel, KrausPair};
use crate::cluster::{cluster_vector, InputState};
use crate::error::{Error, Result};
use crate::qstate::{
    apply_single_qubit, bit, c, conjugate, embed_op, fidelity_pure, identity, ket_minus, ket_plus,
    kron, partial_trace, pauli_x, pauli_z, CMat, CVec,
};

/// Which one-qubit gate the measurement pattern implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    X,
    Z,
}

impl GateKind {
    pub fn unitary(&self) -> CMat {
        match self {
            GateKind::X => pauli_x(),
            GateKind::Z => pauli_z(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Z => "z",
        }
    }
}

/// Which two-qubit resource state the preparation protocol targets:
/// (I ⊗ U)(|00⟩ + |11⟩)/√2 with U = X or Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceKind {
    X,
    Z,
}

impl ResourceKind {
    pub fn unitary(&self) -> CMat {
        match self {
            ResourceKind::X => pauli_x(),
            ResourceKind::Z => pauli_z(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ResourceKind::X => "x",
            ResourceKind::Z => "z",
        }
    }
}

/// A single σx measurement collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn is_plus(&self) -> bool {
        matches!(self, Outcome::Plus)
    }
}

/// How measurement branches are combined into the output state.
///
/// `Weighted` sums the unnormalized post-measurement branches (their weights
/// are the branch probabilities, which already sum to one). `Uniform`
/// normalizes each branch and averages with equal coefficients 1/2^k.
/// For these protocols all branch weights are equal, so the two conventions
/// agree; both are kept so that equality is testable rather than assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchConvention {
    #[default]
    Weighted,
    Uniform,
}

impl BranchConvention {
    pub fn name(&self) -> &'static str {
        match self {
            BranchConvention::Weighted => "weighted",
            BranchConvention::Uniform => "uniform",
        }
    }
}

/// Per-qubit measurement times: four (qubits 1–4) for the gate protocol,
/// three (qubits 2–4) for the resource protocol. Times must be nonnegative
/// and nondecreasing (measurements proceed in qubit order).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSchedule {
    times: Vec<f64>,
}

impl MeasurementSchedule {
    fn validated(times: Vec<f64>) -> Result<Self> {
        for &t in &times {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::invalid(format!("measurement time {t} must be ≥ 0")));
            }
        }
        for w in times.windows(2) {
            if w[1] < w[0] {
                return Err(Error::invalid(format!(
                    "schedule must be nondecreasing: {} followed by {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(MeasurementSchedule { times })
    }

    /// Gate-protocol schedule: measurement times for qubits 1–4.
    pub fn gate(times: [f64; 4]) -> Result<Self> {
        Self::validated(times.to_vec())
    }

    /// Resource-protocol schedule: measurement times for qubits 2–4.
    pub fn resource(times: [f64; 3]) -> Result<Self> {
        Self::validated(times.to_vec())
    }

    /// Expand table codes (each in 1..=3) through the channel's code→time map.
    pub fn from_codes(channel: &Channel, codes: &[u8]) -> Result<Self> {
        if codes.len() != 3 && codes.len() != 4 {
            return Err(Error::invalid("schedule must have 3 or 4 entries"));
        }
        let mut times = Vec::with_capacity(codes.len());
        for &k in codes {
            times.push(channel.code_time(k)?);
        }
        Self::validated(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn is_gate(&self) -> bool {
        self.times.len() == 4
    }

    pub fn last_time(&self) -> f64 {
        *self.times.last().expect("schedule is nonempty")
    }

    /// The noise evaluation time of each of the five cluster qubits.
    pub fn per_qubit_times(&self) -> [f64; 5] {
        let t = &self.times;
        if self.is_gate() {
            [t[0], t[1], t[2], t[3], t[3]]
        } else {
            let last = t[2];
            [last, t[0], t[1], t[2], last]
        }
    }
}

/// Enumerate all 2^k collapse vectors; index bit j (most significant first)
/// gives the outcome of the j-th measured qubit, 0 = Plus.
pub fn enumerate_outcomes(k: usize) -> Vec<Vec<Outcome>> {
    (0..1usize << k)
        .map(|idx| {
            (0..k)
                .map(|j| {
                    if (idx >> (k - 1 - j)) & 1 == 0 {
                        Outcome::Plus
                    } else {
                        Outcome::Minus
                    }
                })
                .collect()
        })
        .collect()
}

/// Gate-protocol correction bits from the four collapses.
///
/// X-gate: s₂ = 1 iff the collapse is |+⟩, the other three are 1 iff |−⟩.
/// Z-gate: s₃ = 1 iff the collapse is |+⟩, the other three are 1 iff |−⟩.
pub fn s_bits(gate: GateKind, outcomes: &[Outcome; 4]) -> [u8; 4] {
    let flipped = match gate {
        GateKind::X => 1usize,
        GateKind::Z => 2usize,
    };
    let mut s = [0u8; 4];
    for (q, o) in outcomes.iter().enumerate() {
        s[q] = if q == flipped {
            u8::from(o.is_plus())
        } else {
            u8::from(!o.is_plus())
        };
    }
    s
}

/// Gate byproduct Z^{s₁+s₃} · X^{s₂+s₄} (exponents mod 2, written order).
pub fn byproduct_gate(s: &[u8; 4]) -> CMat {
    let mut m = identity(2);
    if (s[0] + s[2]) % 2 == 1 {
        m *= pauli_z();
    }
    if (s[1] + s[3]) % 2 == 1 {
        m *= pauli_x();
    }
    m
}

/// Resource-protocol correction bits (r₂, r₃, r₄) from the three collapses.
///
/// Z-resource: all three bits are 1 iff the collapse is |+⟩.
/// X-resource: r₂, r₄ are 1 iff |+⟩; r₃ is 1 iff |−⟩.
///
/// These labelings are the unique ones (up to the harmless joint flip of r₂
/// and r₄) under which the byproduct formulas below return every noiseless
/// measurement branch to the target resource state exactly.
pub fn r_bits(kind: ResourceKind, outcomes: &[Outcome; 3]) -> [u8; 3] {
    match kind {
        ResourceKind::Z => [
            u8::from(outcomes[0].is_plus()),
            u8::from(outcomes[1].is_plus()),
            u8::from(outcomes[2].is_plus()),
        ],
        ResourceKind::X => [
            u8::from(outcomes[0].is_plus()),
            u8::from(!outcomes[1].is_plus()),
            u8::from(outcomes[2].is_plus()),
        ],
    }
}

/// The qubit-5 correction operator of the resource protocol.
///
/// Z-resource: X^{r₂} Z^{r₃} X^{r₄}. X-resource: Z^{r₂+r₄} X^{r₂+r₄+1}
/// Z^{r₂+r₃+r₄}. Exponents mod 2, factors multiplied in written order.
pub fn resource_correction(kind: ResourceKind, r: &[u8; 3]) -> CMat {
    let [r2, r3, r4] = [r[0] as u32, r[1] as u32, r[2] as u32];
    let factors: [(u32, CMat); 3] = match kind {
        ResourceKind::Z => [(r2, pauli_x()), (r3, pauli_z()), (r4, pauli_x())],
        ResourceKind::X => [
            ((r2 + r4) % 2, pauli_z()),
            ((r2 + r4 + 1) % 2, pauli_x()),
            ((r2 + r3 + r4) % 2, pauli_z()),
        ],
    };
    let mut m = identity(2);
    for (e, op) in factors {
        if e % 2 == 1 {
            m *= op;
        }
    }
    m
}

/// The resource byproduct on the retained pair (qubit 1, qubit 5):
/// identity on qubit 1 tensored with the qubit-5 correction.
pub fn byproduct_resource(kind: ResourceKind, r: &[u8; 3]) -> CMat {
    kron(&identity(2), &resource_correction(kind, r))
}

/// Embedded |±⟩⟨±| projector on one qubit of an n-qubit register.
pub fn xbasis_projector(qubit: usize, collapse: Outcome, n: usize) -> Result<CMat> {
    let ket = match collapse {
        Outcome::Plus => ket_plus(),
        Outcome::Minus => ket_minus(),
    };
    let proj = &ket * ket.adjoint();
    embed_op(&proj, qubit, n)
}

/// Apply the product channel ⊗_k Λ_k to a 32×32 state: Σ over all 2⁵ Kraus
/// index combinations of M ρ M† with M = E^{(1)} ⊗ … ⊗ E^{(5)}.
pub fn apply_product_channel(rho: &CMat, pairs: &[KrausPair; 5]) -> Result<CMat> {
    let mut out = CMat::zeros(32, 32);
    for combo in 0..32usize {
        let mut m = identity(32);
        for q in 1..=5usize {
            let e = if bit(combo, q, 5) == 0 { &pairs[q - 1].e1 } else { &pairs[q - 1].e2 };
            m = embed_op(e, q, 5)? * m;
        }
        out += conjugate(rho, &m)?;
    }
    Ok(out)
}

fn schedule_kraus(channel: &Channel, schedule: &MeasurementSchedule) -> [KrausPair; 5] {
    let t = schedule.per_qubit_times();
    [
        channel.kraus(t[0]),
        channel.kraus(t[1]),
        channel.kraus(t[2]),
        channel.kraus(t[3]),
        channel.kraus(t[4]),
    ]
}

/// The noisy cluster density matrix: each qubit's channel evaluated at its
/// scheduled time (unmeasured qubits at the last scheduled time).
pub fn noisy_cluster(
    input: &InputState,
    channel: &Channel,
    schedule: &MeasurementSchedule,
) -> Result<CMat> {
    let v = cluster_vector(input);
    let rho = &v * v.adjoint();
    apply_product_channel(&rho, &schedule_kraus(channel, schedule))
}

/// One measurement branch: collapse record, unnormalized post-correction
/// reduced state, and the branch weight (trace of the projected state).
#[derive(Debug, Clone)]
pub struct BranchResult {
    pub outcomes: Vec<Outcome>,
    pub state: CMat,
    pub weight: f64,
}

/// The resource target (I ⊗ U)(|00⟩ + |11⟩)/√2 on the pair (qubit 1, qubit 5).
pub fn resource_target(kind: ResourceKind) -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = CVec::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
    kron(&identity(2), &kind.unitary()) * bell
}

// ---------------------------------------------------------------------------
// Dense reference path: textbook 32×32 density pipeline.
// ---------------------------------------------------------------------------

/// All 16 gate-protocol branches via the dense pipeline: project the noisy
/// 32×32 state on qubits 1–4, apply the byproduct on qubit 5, reduce.
pub fn gate_branches_dense(
    input: &InputState,
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
) -> Result<Vec<BranchResult>> {
    if !schedule.is_gate() {
        return Err(Error::invalid("gate protocol needs a 4-time schedule"));
    }
    let noisy = noisy_cluster(input, channel, schedule)?;
    let mut branches = Vec::with_capacity(16);
    for outcomes in enumerate_outcomes(4) {
        let mut proj = identity(32);
        for (j, &o) in outcomes.iter().enumerate() {
            proj = xbasis_projector(j + 1, o, 5)? * proj;
        }
        let projected = conjugate(&noisy, &proj)?;
        let weight = projected.trace().re;
        let os: [Outcome; 4] = [outcomes[0], outcomes[1], outcomes[2], outcomes[3]];
        let b5 = embed_op(&byproduct_gate(&s_bits(gate, &os)), 5, 5)?;
        let corrected = conjugate(&projected, &b5)?;
        let reduced = partial_trace(&corrected, &[5], 5)?;
        branches.push(BranchResult { outcomes, state: reduced, weight });
    }
    Ok(branches)
}

/// All 8 resource-protocol branches via the dense pipeline (input fixed to
/// |+⟩; qubits 2–4 measured; the pair (1,5) retained).
pub fn resource_branches_dense(
    kind: ResourceKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
) -> Result<Vec<BranchResult>> {
    if schedule.len() != 3 {
        return Err(Error::invalid("resource protocol needs a 3-time schedule"));
    }
    let noisy = noisy_cluster(&InputState::plus(), channel, schedule)?;
    let mut branches = Vec::with_capacity(8);
    for outcomes in enumerate_outcomes(3) {
        let mut proj = identity(32);
        for (j, &o) in outcomes.iter().enumerate() {
            proj = xbasis_projector(j + 2, o, 5)? * proj;
        }
        let projected = conjugate(&noisy, &proj)?;
        let weight = projected.trace().re;
        let os: [Outcome; 3] = [outcomes[0], outcomes[1], outcomes[2]];
        let corr5 = embed_op(&resource_correction(kind, &r_bits(kind, &os)), 5, 5)?;
        let corrected = conjugate(&projected, &corr5)?;
        let reduced = partial_trace(&corrected, &[1, 5], 5)?;
        branches.push(BranchResult { outcomes, state: reduced, weight });
    }
    Ok(branches)
}

fn combine_branches(branches: &[BranchResult], convention: BranchConvention) -> Result<CMat> {
    let dim = branches[0].state.nrows();
    let mut acc = CMat::zeros(dim, dim);
    let n = branches.len() as f64;
    for b in branches {
        match convention {
            BranchConvention::Weighted => acc += &b.state,
            BranchConvention::Uniform => {
                if b.weight <= 0.0 {
                    return Err(Error::numeric("zero-weight branch under uniform averaging"));
                }
                acc += &b.state * c(1.0 / (b.weight * n), 0.0);
            }
        }
    }
    let tr = acc.trace().re;
    if tr <= 0.0 {
        return Err(Error::numeric("output state has nonpositive trace"));
    }
    Ok(acc * c(1.0 / tr, 0.0))
}

/// Gate output state via the dense reference pipeline.
pub fn gate_output_state_dense(
    input: &InputState,
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<CMat> {
    combine_branches(&gate_branches_dense(input, gate, channel, schedule)?, convention)
}

/// Resource output state via the dense reference pipeline.
pub fn resource_output_state_dense(
    kind: ResourceKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<CMat> {
    combine_branches(&resource_branches_dense(kind, channel, schedule)?, convention)
}

// ---------------------------------------------------------------------------
// Fast exact path: state-vector Kraus combinations with a Walsh–Hadamard
// transform collapsing all σx-branch amplitudes at once.
// ---------------------------------------------------------------------------

const UNNORM_H: [Complex64; 4] = [
    Complex64 { re: 1.0, im: 0.0 },
    Complex64 { re: 1.0, im: 0.0 },
    Complex64 { re: 1.0, im: 0.0 },
    Complex64 { re: -1.0, im: 0.0 },
];

/// For every Kraus combination, apply M to the cluster vector and transform
/// the measured qubits with an unnormalized Hadamard; the resulting array
/// holds every branch's collapse amplitudes simultaneously.
fn combo_branch_vectors(
    psi: &CVec,
    pairs: &[KrausPair; 5],
    measured: &[usize],
) -> Vec<[Complex64; 32]> {
    let flats: Vec<[[Complex64; 4]; 2]> = pairs.iter().map(|p| p.flat()).collect();
    let mut out = Vec::with_capacity(32);
    let base: [Complex64; 32] = std::array::from_fn(|i| psi[i]);
    for combo in 0..32usize {
        let mut v = base;
        for q in 1..=5usize {
            apply_single_qubit(&mut v, &flats[q - 1][bit(combo, q, 5)], q, 5);
        }
        for &q in measured {
            apply_single_qubit(&mut v, &UNNORM_H, q, 5);
        }
        out.push(v);
    }
    out
}

struct BranchAccumulator {
    // Per-branch unnormalized reduced density matrix (dim × dim, row major)
    // and weight.
    states: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
    dim: usize,
}

impl BranchAccumulator {
    fn new(branch_count: usize, dim: usize) -> Self {
        BranchAccumulator {
            states: vec![vec![Complex64::default(); dim * dim]; branch_count],
            weights: vec![0.0; branch_count],
            dim,
        }
    }

    fn add(&mut self, branch: usize, corrected: &[Complex64]) {
        let d = self.dim;
        let state = &mut self.states[branch];
        let mut w = 0.0;
        for i in 0..d {
            for j in 0..d {
                state[i * d + j] += corrected[i] * corrected[j].conj();
            }
            w += corrected[i].norm_sqr();
        }
        self.weights[branch] += w;
    }

    fn combine(self, convention: BranchConvention) -> Result<CMat> {
        let d = self.dim;
        let n = self.states.len() as f64;
        let mut acc = CMat::zeros(d, d);
        for (state, &w) in self.states.iter().zip(self.weights.iter()) {
            let scale = match convention {
                BranchConvention::Weighted => 1.0,
                BranchConvention::Uniform => {
                    if w <= 0.0 {
                        return Err(Error::numeric("zero-weight branch under uniform averaging"));
                    }
                    1.0 / (w * n)
                }
            };
            for i in 0..d {
                for j in 0..d {
                    acc[(i, j)] += state[i * d + j] * c(scale, 0.0);
                }
            }
        }
        let tr = acc.trace().re;
        if tr <= 0.0 {
            return Err(Error::numeric("output state has nonpositive trace"));
        }
        Ok(acc * c(1.0 / tr, 0.0))
    }
}

/// Gate output state (2×2) on qubit 5: exact, via the state-vector fast path.
pub fn gate_output_state(
    input: &InputState,
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<CMat> {
    if !schedule.is_gate() {
        return Err(Error::invalid("gate protocol needs a 4-time schedule"));
    }
    let psi = cluster_vector(input);
    let pairs = schedule_kraus(channel, schedule);
    let vectors = combo_branch_vectors(&psi, &pairs, &[1, 2, 3, 4]);

    // Collapse normalization (⟨±| = (⟨0| ± ⟨1|)/√2 on four qubits).
    let scale = c(0.25, 0.0);
    let corrections: Vec<[Complex64; 4]> = enumerate_outcomes(4)
        .iter()
        .map(|o| {
            let os = [o[0], o[1], o[2], o[3]];
            let b = byproduct_gate(&s_bits(gate, &os));
            [b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]]
        })
        .collect();

    let mut acc = BranchAccumulator::new(16, 2);
    for v in &vectors {
        for branch in 0..16usize {
            let a0 = v[branch << 1] * scale;
            let a1 = v[(branch << 1) | 1] * scale;
            let b = &corrections[branch];
            let corrected = [b[0] * a0 + b[1] * a1, b[2] * a0 + b[3] * a1];
            acc.add(branch, &corrected);
        }
    }
    acc.combine(convention)
}

/// Per-input fidelity of the gate protocol against U|ψ_in⟩.
pub fn gate_state_fidelity(
    input: &InputState,
    gate: GateKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<f64> {
    let rho = gate_output_state(input, gate, channel, schedule, convention)?;
    let target = gate.unitary() * input.ket();
    fidelity_pure(&rho, &target)
}

/// Resource output state (4×4) on the pair (qubit 1, qubit 5): exact, via the
/// state-vector fast path.
pub fn resource_output_state(
    kind: ResourceKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<CMat> {
    if schedule.len() != 3 {
        return Err(Error::invalid("resource protocol needs a 3-time schedule"));
    }
    let psi = cluster_vector(&InputState::plus());
    let pairs = schedule_kraus(channel, schedule);
    let vectors = combo_branch_vectors(&psi, &pairs, &[2, 3, 4]);

    // Collapse normalization on three qubits: (1/√2)³.
    let scale = c(1.0 / (2.0 * std::f64::consts::SQRT_2), 0.0);
    let corrections: Vec<[Complex64; 4]> = enumerate_outcomes(3)
        .iter()
        .map(|o| {
            let os = [o[0], o[1], o[2]];
            let b = resource_correction(kind, &r_bits(kind, &os));
            [b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]]
        })
        .collect();

    let mut acc = BranchAccumulator::new(8, 4);
    for v in &vectors {
        for branch in 0..8usize {
            // Retained amplitudes indexed by (b₁, b₅); the branch index sits
            // on the transformed qubits 2–4.
            let amp = |b1: usize, b5: usize| v[(b1 << 4) | (branch << 1) | b5] * scale;
            let b = &corrections[branch];
            let mut corrected = [Complex64::default(); 4];
            for b1 in 0..2usize {
                let a0 = amp(b1, 0);
                let a1 = amp(b1, 1);
                corrected[b1 << 1] = b[0] * a0 + b[1] * a1;
                corrected[(b1 << 1) | 1] = b[2] * a0 + b[3] * a1;
            }
            acc.add(branch, &corrected);
        }
    }
    acc.combine(convention)
}

/// Fidelity of the prepared resource state against (I ⊗ U)(|00⟩+|11⟩)/√2.
pub fn resource_fidelity(
    kind: ResourceKind,
    channel: &Channel,
    schedule: &MeasurementSchedule,
    convention: BranchConvention,
) -> Result<f64> {
    let rho = resource_output_state(kind, channel, schedule, convention)?;
    fidelity_pure(&rho, &resource_target(kind))
}
