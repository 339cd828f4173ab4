//! Construction of the five-qubit linear cluster state S|Ψ(ψ_in)⟩ from an
//! arbitrary input qubit on site 1 and |+⟩ on sites 2–5.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{bit, c, CMat, CVec, PureState};

/// An input qubit |ψ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    theta: f64,
    phi: f64,
}

impl InputState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::invalid(format!("θ = {theta} outside [0, π]")));
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::invalid(format!("φ = {phi} outside [0, 2π)")));
        }
        Ok(InputState { theta, phi })
    }

    /// |+⟩, the fixed input of the resource preparation protocol.
    pub fn plus() -> Self {
        InputState { theta: std::f64::consts::FRAC_PI_2, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        c((self.theta / 2.0).cos(), 0.0)
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar((self.theta / 2.0).sin(), self.phi)
    }

    pub fn ket(&self) -> CVec {
        CVec::from_vec(vec![self.alpha(), self.beta()])
    }
}

/// |ψ_in⟩ ⊗ |+⟩⊗4 as a 32-dimensional vector.
pub fn product_state(input: &InputState) -> CVec {
    let alpha = input.alpha();
    let beta = input.beta();
    let quarter = c(0.25, 0.0);
    let mut v = CVec::zeros(32);
    for i in 0..32usize {
        let lead = if bit(i, 1, 5) == 0 { alpha } else { beta };
        v[i] = lead * quarter;
    }
    v
}

/// Diagonal (±1) of the entangling phase operator on an n-qubit line: the
/// basis state with bits (b₁,…,b_n) picks up (−1)^{Σ_j (1−b_j)·b_{j+1}}.
pub fn ising_phase_diag(n: usize) -> Result<Vec<f64>> {
    if !(2..=5).contains(&n) {
        return Err(Error::invalid("line length must be between 2 and 5 qubits"));
    }
    let mut diag = vec![0.0; 1 << n];
    for (i, d) in diag.iter_mut().enumerate() {
        let mut e = 0usize;
        for j in 1..n {
            e += (1 - bit(i, j, n)) * bit(i, j + 1, n);
        }
        *d = if e % 2 == 0 { 1.0 } else { -1.0 };
    }
    Ok(diag)
}

/// The entangling phase operator as a diagonal matrix.
pub fn ising_phase_operator(n: usize) -> Result<CMat> {
    let diag = ising_phase_diag(n)?;
    let mut m = CMat::zeros(1 << n, 1 << n);
    for (i, d) in diag.iter().enumerate() {
        m[(i, i)] = c(*d, 0.0);
    }
    Ok(m)
}

/// The five-qubit linear cluster state S|Ψ(ψ_in)⟩.
#[derive(Debug, Clone)]
pub struct ClusterState {
    pub state: PureState,
    pub input: InputState,
}

impl ClusterState {
    pub fn new(input: InputState) -> Self {
        let diag = ising_phase_diag(5).expect("5 is a valid line length");
        let mut v = product_state(&input);
        for i in 0..32 {
            v[i] *= c(diag[i], 0.0);
        }
        ClusterState { state: PureState::new(v), input }
    }

    pub fn vector(&self) -> &CVec {
        &self.state.amps
    }
}

/// Convenience: the cluster state vector for given input angles.
pub fn cluster_vector(input: &InputState) -> CVec {
    ClusterState::new(*input).state.amps
}
