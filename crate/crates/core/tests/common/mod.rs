//! Shared assertion helpers for the integration tests.

#![allow(dead_code)]

use mbqc_sim::qstate::CMat;

/// Assert |actual − expected| ≤ tol with a labeled diagnostic.
pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} (tol {tol}, delta {:.3e})",
        (actual - expected).abs()
    );
}

/// Assert two matrices agree entrywise within tol.
pub fn assert_mat_close(a: &CMat, b: &CMat, tol: f64, what: &str) {
    assert_eq!(a.shape(), b.shape(), "{what}: shape mismatch {:?} vs {:?}", a.shape(), b.shape());
    let defect = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(defect <= tol, "{what}: max entry deviation {defect:.3e} (tol {tol})");
}
