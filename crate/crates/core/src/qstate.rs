//! Dense complex linear algebra for up to five qubits: tensor products,
//! operator embedding, conjugation, partial trace, and pure-state fidelity.
//!
//! Conventions, fixed globally:
//! - qubit 1 is the leftmost tensor factor (most significant bit);
//! - basis label b = 0 corresponds to |0⟩, the σz = +1 eigenstate;
//! - bit k of basis index i (n qubits) is `(i >> (n − k)) & 1`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Entrywise tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on |trace − 1| for normalized density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative admissible eigenvalue of a density matrix.
pub const POSITIVITY_TOL: f64 = -1e-10;
/// Largest admissible imaginary residue when a fidelity is read off.
pub const IMAG_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

pub fn ket0() -> CVec {
    CVec::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn ket1() -> CVec {
    CVec::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])
}

/// |+⟩ = (|0⟩ + |1⟩)/√2.
pub fn ket_plus() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVec::from_vec(vec![c(s, 0.0), c(s, 0.0)])
}

/// |−⟩ = (|0⟩ − |1⟩)/√2.
pub fn ket_minus() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVec::from_vec(vec![c(s, 0.0), c(-s, 0.0)])
}

/// Bit k (1-based, qubit 1 = most significant) of basis index `i` on `n` qubits.
pub fn bit(i: usize, k: usize, n: usize) -> usize {
    (i >> (n - k)) & 1
}

/// Kronecker product with the left factor most significant.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Embed a 2×2 operator on qubit `qubit` (1-based) of an `n`-qubit register:
/// I ⊗ … ⊗ op ⊗ … ⊗ I under the qubit-1-leftmost ordering.
pub fn embed_op(op: &CMat, qubit: usize, n: usize) -> Result<CMat> {
    if op.nrows() != 2 || op.ncols() != 2 {
        return Err(Error::invalid("embed_op expects a 2×2 operator"));
    }
    if qubit < 1 || qubit > n || n > 5 {
        return Err(Error::invalid(format!(
            "qubit index {qubit} out of range for {n} qubits (n ≤ 5)"
        )));
    }
    let left = identity(1 << (qubit - 1));
    let right = identity(1 << (n - qubit));
    Ok(kron(&kron(&left, op), &right))
}

/// m · rho · m†.
pub fn conjugate(rho: &CMat, m: &CMat) -> Result<CMat> {
    if rho.nrows() != m.ncols() {
        return Err(Error::invalid(format!(
            "dimension mismatch: rho is {}×{}, m is {}×{}",
            rho.nrows(),
            rho.ncols(),
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m * rho * m.adjoint())
}

/// Partial trace keeping the 1-based qubit indices in `keep` (ascending in the
/// output), tracing out the rest of an `n`-qubit density matrix.
pub fn partial_trace(rho: &CMat, keep: &[usize], n: usize) -> Result<CMat> {
    if keep.is_empty() {
        return Err(Error::invalid("partial_trace: keep set must be nonempty"));
    }
    if rho.nrows() != (1 << n) || rho.ncols() != (1 << n) {
        return Err(Error::invalid("partial_trace: dimension is not 2^n"));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.first().copied().unwrap_or(0) < 1 || kept.last().copied().unwrap_or(0) > n {
        return Err(Error::invalid("partial_trace: keep indices out of range"));
    }
    let traced: Vec<usize> = (1..=n).filter(|q| !kept.contains(q)).collect();
    let kd = 1usize << kept.len();
    let ed = 1usize << traced.len();

    // Assemble a full basis index from the kept-subsystem value `a` and the
    // traced-subsystem value `e`, both read most-significant-qubit first.
    let index = |a: usize, e: usize| -> usize {
        let mut i = 0usize;
        for (pos, &q) in kept.iter().enumerate() {
            let b = (a >> (kept.len() - 1 - pos)) & 1;
            i |= b << (n - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let b = (e >> (traced.len() - 1 - pos)) & 1;
            i |= b << (n - q);
        }
        i
    };

    let mut out = CMat::zeros(kd, kd);
    for a in 0..kd {
        for b in 0..kd {
            let mut sum = c(0.0, 0.0);
            for e in 0..ed {
                sum += rho[(index(a, e), index(b, e))];
            }
            out[(a, b)] = sum;
        }
    }
    Ok(out)
}

/// ⟨ψ|ρ|ψ⟩ as a real number; errors if the imaginary residue exceeds tolerance.
pub fn fidelity_pure(rho: &CMat, psi: &CVec) -> Result<f64> {
    if rho.nrows() != psi.len() {
        return Err(Error::invalid("fidelity_pure: dimension mismatch"));
    }
    let v = rho * psi;
    let f = psi.dotc(&v);
    if f.im.abs() > IMAG_TOL {
        return Err(Error::numeric(format!(
            "fidelity has imaginary residue {:.3e}",
            f.im
        )));
    }
    Ok(f.re)
}

/// Apply a 2×2 operator to qubit `qubit` (1-based) of an `n`-qubit state
/// vector in place. `m` is given row-major as [m00, m01, m10, m11].
pub fn apply_single_qubit(state: &mut [Complex64], m: &[Complex64; 4], qubit: usize, n: usize) {
    let stride = 1usize << (n - qubit);
    let len = state.len();
    let mut base = 0;
    while base < len {
        for off in 0..stride {
            let i0 = base + off;
            let i1 = i0 + stride;
            let v0 = state[i0];
            let v1 = state[i1];
            state[i0] = m[0] * v0 + m[1] * v1;
            state[i1] = m[2] * v0 + m[3] * v1;
        }
        base += stride << 1;
    }
}

/// A pure state vector of a 2^n-dimensional register.
#[derive(Debug, Clone)]
pub struct PureState {
    pub amps: CVec,
}

impl PureState {
    pub fn new(amps: CVec) -> Self {
        PureState { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// Squared-amplitude sum must be 1 within 1e-12 for a normalized state.
    pub fn check_normalized(&self) -> Result<()> {
        let defect = (self.norm() - 1.0).abs();
        if defect > 1e-12 {
            return Err(Error::numeric(format!("state norm defect {defect:.3e}")));
        }
        Ok(())
    }

    pub fn density(&self) -> DensityMatrix {
        let v = &self.amps;
        DensityMatrix {
            mat: v * v.adjoint(),
            normalized: (self.norm() - 1.0).abs() <= 1e-12,
        }
    }
}

/// A density matrix with an explicit normalization flag (projection branches
/// are carried unnormalized).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub mat: CMat,
    pub normalized: bool,
}

impl DensityMatrix {
    pub fn new(mat: CMat, normalized: bool) -> Self {
        DensityMatrix { mat, normalized }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Largest entrywise |ρ − ρ†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let adj = self.mat.adjoint();
        let mut worst: f64 = 0.0;
        for (x, y) in self.mat.iter().zip(adj.iter()) {
            worst = worst.max((x - y).norm());
        }
        worst
    }

    /// Smallest eigenvalue (the matrix is Hermitian up to tolerance).
    pub fn min_eigenvalue(&self) -> f64 {
        let eig = self.mat.clone().symmetric_eigen();
        eig.eigenvalues.iter().fold(f64::INFINITY, |m, &e| m.min(e))
    }

    /// Check the density-matrix invariants: Hermiticity, real trace, trace 1
    /// when flagged normalized, and positivity within tolerance.
    pub fn validate(&self) -> Result<()> {
        let h = self.hermiticity_defect();
        if h > HERMITICITY_TOL {
            return Err(Error::numeric(format!("hermiticity defect {h:.3e}")));
        }
        let tr = self.trace();
        if tr.im.abs() > HERMITICITY_TOL {
            return Err(Error::numeric(format!("trace imaginary part {:.3e}", tr.im)));
        }
        if self.normalized && (tr.re - 1.0).abs() > TRACE_TOL {
            return Err(Error::numeric(format!("trace {:+.12e} ≠ 1", tr.re)));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < POSITIVITY_TOL {
            return Err(Error::numeric(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(())
    }
}
