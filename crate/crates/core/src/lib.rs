//! Exact open-system simulation of one-qubit X and Z gates on a five-qubit
//! linear-cluster measurement-based quantum computer, under non-Markovian
//! amplitude-damping and phase-damping noise applied between cluster
//! preparation and the scheduled σx measurements.
//!
//! The crate provides:
//! - dense complex linear algebra for ≤ 5 qubits ([`qstate`]);
//! - the time-parameterized Kraus channels and their memory functions
//!   p(t) and L(t) ([`channels`]);
//! - cluster-state construction ([`cluster`]);
//! - the measurement protocol with byproduct corrections, for both the
//!   teleported-gate output and the two-qubit resource preparation
//!   ([`mbqc`]);
//! - Bloch-grid averaging and dispersion statistics ([`fidelity`]);
//! - closed-form fidelity expressions used as an independent cross-check
//!   and fast sweep path ([`closedform`]);
//! - the reference tables the tool reproduces ([`reference`]).
//!
//! Everything is deterministic: fixed iteration orders, no randomness, no
//! shared mutable state.

pub mod channels;
pub mod closedform;
pub mod cluster;
pub mod error;
pub mod fidelity;
pub mod mbqc;
pub mod qstate;
pub mod reference;

pub use error::{Error, Result};
