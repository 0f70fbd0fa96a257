use crate::error::{Error, Result};

pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-10;

const MAX_LEVEL: u32 = 24;
const MIN_LEVEL: u32 = 6;

/// `∫_a^b f` by composite Simpson refinement with a Richardson error
/// estimate, accurate to [`DEFAULT_RELATIVE_TOLERANCE`].
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    quadrature_with(f, a, b, DEFAULT_RELATIVE_TOLERANCE)
}

pub fn quadrature_with<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "quadrature needs finite a < b",
        });
    }
    // Trapezoid sums reuse every earlier node; Simpson is (4T₂ₙ − Tₙ)/3.
    let mut intervals = 1usize;
    let mut trapezoid = 0.5 * (b - a) * (f(a) + f(b));
    let mut simpson_prev: Option<f64> = None;
    let mut estimate = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        let h = (b - a) / (2 * intervals) as f64;
        let midpoints: f64 = (0..intervals).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
        let refined = 0.5 * trapezoid + h * midpoints;
        let simpson = (4.0 * refined - trapezoid) / 3.0;
        if !simpson.is_finite() {
            return Err(Error::QuadratureNonConvergence { a, b, estimate });
        }
        if let Some(prev) = simpson_prev {
            estimate = (simpson - prev).abs() / 15.0;
            if level >= MIN_LEVEL && estimate <= rel_tol * simpson.abs() {
                return Ok(simpson + (simpson - prev) / 15.0);
            }
            if simpson == 0.0 && prev == 0.0 && level >= MIN_LEVEL {
                return Ok(0.0);
            }
        }
        simpson_prev = Some(simpson);
        trapezoid = refined;
        intervals *= 2;
    }
    Err(Error::QuadratureNonConvergence { a, b, estimate })
}
