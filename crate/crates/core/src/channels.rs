//! Time-parameterized single-qubit Kraus families for the non-Markovian
//! amplitude-damping and phase-damping channels, including the scalar memory
//! functions p(t) and L(t).
//!
//! The channel from time 0 to t is always realized as ONE Kraus application at
//! parameter p(t) or L(t); non-Markovian maps are not divisible, so shorter
//! applications are never composed.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::qstate::{c, pauli_z, CMat};

/// Amplitude damping: rates λ (bath linewidth) and γ₀ (system rate), in the
/// underdamped regime 2γ₀λ − λ² > 0 where
/// p(t) = e^{−λt} [ (λ/d)·sin(dt/2) + cos(dt/2) ]², d = √(2γ₀λ − λ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdParams {
    lambda: f64,
    gamma0: f64,
}

impl AdParams {
    pub fn new(lambda: f64, gamma0: f64) -> Result<Self> {
        if !(lambda > 0.0) || !(gamma0 > 0.0) {
            return Err(Error::invalid("amplitude damping requires λ > 0 and γ₀ > 0"));
        }
        if 2.0 * gamma0 * lambda - lambda * lambda <= 0.0 {
            return Err(Error::invalid(
                "amplitude damping requires the underdamped regime 2γ₀λ − λ² > 0",
            ));
        }
        Ok(AdParams { lambda, gamma0 })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Oscillation rate d = √(2γ₀λ − λ²).
    pub fn d(&self) -> f64 {
        (2.0 * self.gamma0 * self.lambda - self.lambda * self.lambda).sqrt()
    }

    /// The excited-population memory function p(t) ∈ [0, 1].
    pub fn p(&self, t: f64) -> f64 {
        let d = self.d();
        let osc = (self.lambda / d) * (d * t / 2.0).sin() + (d * t / 2.0).cos();
        (-self.lambda * t).exp() * osc * osc
    }

    pub fn kraus(&self, t: f64) -> KrausPair {
        kraus_from_p(self.p(t), t)
    }

    /// Expand a schedule code k ∈ {1,2,3} to its time (k+1)·π/d, placing the
    /// code-1 time on the first revival peak of p(t).
    pub fn code_time(&self, code: u8) -> f64 {
        (code as f64 + 1.0) * PI / self.d()
    }
}

impl Default for AdParams {
    fn default() -> Self {
        AdParams { lambda: 1e-3, gamma0: 10.0 }
    }
}

/// Phase damping: coupling a and time scale τ, in the oscillatory regime
/// 16a²τ² − 1 > 0 where
/// L(t) = e^{−t/2τ} [ (1/u)·sin(ut/2τ) + cos(ut/2τ) ], u = √(16a²τ² − 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdParams {
    a: f64,
    tau: f64,
}

impl PdParams {
    pub fn new(a: f64, tau: f64) -> Result<Self> {
        if !(a > 0.0) || !(tau > 0.0) {
            return Err(Error::invalid("phase damping requires a > 0 and τ > 0"));
        }
        if 16.0 * a * a * tau * tau - 1.0 <= 0.0 {
            return Err(Error::invalid(
                "phase damping requires the oscillatory regime 16a²τ² − 1 > 0",
            ));
        }
        Ok(PdParams { a, tau })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Oscillation parameter u = √(16a²τ² − 1).
    pub fn u(&self) -> f64 {
        (16.0 * self.a * self.a * self.tau * self.tau - 1.0).sqrt()
    }

    /// The coherence memory function L(t) ∈ [−1, 1].
    pub fn l(&self, t: f64) -> f64 {
        let u = self.u();
        let x = u * t / (2.0 * self.tau);
        (-t / (2.0 * self.tau)).exp() * ((1.0 / u) * x.sin() + x.cos())
    }

    pub fn kraus(&self, t: f64) -> KrausPair {
        kraus_from_l(self.l(t), t)
    }

    /// Expand a schedule code k ∈ {1,2,3} to its time (k+1)·π/2, placing the
    /// code-1 time on the first extremum pattern of L(t).
    pub fn code_time(&self, code: u8) -> f64 {
        (code as f64 + 1.0) * PI / 2.0
    }
}

impl Default for PdParams {
    fn default() -> Self {
        PdParams { a: 1.0, tau: 30.0 }
    }
}

/// The two Kraus operators of a channel evaluated at one time.
#[derive(Debug, Clone)]
pub struct KrausPair {
    pub e1: CMat,
    pub e2: CMat,
    pub time: f64,
}

impl KrausPair {
    /// Largest entrywise |E₁†E₁ + E₂†E₂ − I|.
    pub fn completeness_defect(&self) -> f64 {
        let s = self.e1.adjoint() * &self.e1 + self.e2.adjoint() * &self.e2;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s[(i, j)] - c(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Row-major 2×2 entries of E₁ and E₂, for the state-vector fast path.
    pub fn flat(&self) -> [[num_complex::Complex64; 4]; 2] {
        let f = |m: &CMat| [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
        [f(&self.e1), f(&self.e2)]
    }
}

/// Amplitude-damping Kraus pair at population parameter p ∈ [0, 1]:
/// E₁ = diag(1, √p), E₂ = √(1−p)·|0⟩⟨1|.
pub fn kraus_from_p(p: f64, time: f64) -> KrausPair {
    let p = p.clamp(0.0, 1.0);
    let mut e1 = CMat::identity(2, 2);
    e1[(1, 1)] = c(p.sqrt(), 0.0);
    let mut e2 = CMat::zeros(2, 2);
    e2[(0, 1)] = c((1.0 - p).sqrt(), 0.0);
    KrausPair { e1, e2, time }
}

/// Phase-damping Kraus pair at coherence parameter L ∈ [−1, 1]:
/// E₁ = √((1+L)/2)·I, E₂ = √((1−L)/2)·σz.
pub fn kraus_from_l(l: f64, time: f64) -> KrausPair {
    let l = l.clamp(-1.0, 1.0);
    let e1 = CMat::identity(2, 2) * c(((1.0 + l) / 2.0).sqrt(), 0.0);
    let e2 = pauli_z() * c(((1.0 - l) / 2.0).sqrt(), 0.0);
    KrausPair { e1, e2, time }
}

/// A channel selection with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    Ad(AdParams),
    Pd(PdParams),
}

impl Channel {
    pub fn default_ad() -> Self {
        Channel::Ad(AdParams::default())
    }

    pub fn default_pd() -> Self {
        Channel::Pd(PdParams::default())
    }

    pub fn kraus(&self, t: f64) -> KrausPair {
        match self {
            Channel::Ad(p) => p.kraus(t),
            Channel::Pd(p) => p.kraus(t),
        }
    }

    /// The scalar memory function at time t: p(t) for amplitude damping,
    /// L(t) for phase damping.
    pub fn memory(&self, t: f64) -> f64 {
        match self {
            Channel::Ad(p) => p.p(t),
            Channel::Pd(p) => p.l(t),
        }
    }

    /// Expand a schedule code k ∈ {1,2,3} to a time.
    pub fn code_time(&self, code: u8) -> Result<f64> {
        if !(1..=3).contains(&code) {
            return Err(Error::invalid(format!("schedule code {code} not in 1..=3")));
        }
        Ok(match self {
            Channel::Ad(p) => p.code_time(code),
            Channel::Pd(p) => p.code_time(code),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Channel::Ad(_) => "ad",
            Channel::Pd(_) => "pd",
        }
    }
}
