use serde::{Deserialize, Serialize};

use super::solve::EigenResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    /// `(a, b)` eigenvalue pairs in ascending order.
    pub pairs: Vec<(f64, f64)>,
    /// The lowest eigenvalue of `a` when it was set aside.
    pub dropped: Option<f64>,
    pub max_mismatch: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Pairs `b`'s eigenvalues with `a`'s, skipping `a`'s lowest when
/// `drop_ground` is set.
pub fn compare_spectra(
    a: &EigenResult,
    b: &EigenResult,
    drop_ground: bool,
    tol: f64,
) -> Result<MatchReport> {
    compare_values(&a.eigenvalues, &b.eigenvalues, drop_ground, tol)
}

pub fn compare_values(a: &[f64], b: &[f64], drop_ground: bool, tol: f64) -> Result<MatchReport> {
    let (dropped, rest) = match (drop_ground, a.split_first()) {
        (true, Some((first, rest))) => (Some(*first), rest),
        _ => (None, a),
    };
    if rest.len() != b.len() {
        return Err(Error::SpectrumLengthMismatch {
            left: rest.len(),
            right: b.len(),
        });
    }
    let pairs: Vec<(f64, f64)> = rest.iter().copied().zip(b.iter().copied()).collect();
    let max_mismatch = pairs.iter().fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    Ok(MatchReport {
        passed: max_mismatch <= tol,
        pairs,
        dropped,
        max_mismatch,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_inputs() {
        let r = compare_values(&[1.0, 2.0], &[1.0, 2.0], false, 0.0).unwrap();
        assert_eq!(r.max_mismatch, 0.0);
        assert!(r.passed);
        assert_eq!(r.dropped, None);
    }

    #[test]
    fn drop_ground_pairs_excited_states() {
        let r = compare_values(&[0.0, 2.0, 3.0], &[2.0005, 3.0], true, 1e-3).unwrap();
        assert_eq!(r.dropped, Some(0.0));
        assert!(r.passed);
        let r = compare_values(&[0.0, 2.0, 3.0], &[0.0, 1.0], true, 1e-3).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            compare_values(&[0.0, 1.0], &[1.0, 2.0], true, 1e-3),
            Err(Error::SpectrumLengthMismatch { left: 1, right: 2 })
        ));
    }
}
