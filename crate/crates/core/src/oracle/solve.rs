use serde::{Deserialize, Serialize};

use super::grid::Grid;
use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};

/// Accuracy target for an oracle solve. An eigenvalue is only accepted when
/// one grid doubling moves it by less than a tenth of the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tolerance {
    Relative(f64),
    Absolute(f64),
}

impl Tolerance {
    /// Default for analytic-vs-oracle eigenvalue comparisons.
    pub const EIGENVALUE: Tolerance = Tolerance::Relative(1e-4);
    /// Default for the Morse partner spectra.
    pub const MORSE: Tolerance = Tolerance::Absolute(1e-3);

    pub fn allowed(&self, value: f64) -> f64 {
        match *self {
            Tolerance::Relative(t) => t * value.abs(),
            Tolerance::Absolute(t) => t,
        }
    }

    pub fn accepts(&self, value: f64, reference: f64) -> bool {
        (value - reference).abs() <= self.allowed(reference)
    }

    fn gate(&self, value: f64) -> f64 {
        0.1 * self.allowed(value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub grid: Grid,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Sampled on every grid node (zero at the Dirichlet ends), normalized
    /// so the trapezoid rule gives `∫ψ² = 1`, and positive on the first
    /// significant lobe.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Change of the lowest eigenvalue under one grid doubling.
    pub convergence_estimate: f64,
    /// Per-eigenvalue change under one grid doubling.
    pub doubling_shifts: Vec<f64>,
    /// False when fewer bound states than requested lie below the
    /// threshold; `eigenvalues` then holds only the bound subset.
    pub complete: bool,
}

fn discretize(grid: &Grid, potential: &dyn Fn(f64) -> f64) -> SymTridiagonal {
    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let interior = grid.n_points() - 2;
    let diag = (1..=interior)
        .map(|i| kinetic + potential(grid.point(i)))
        .collect();
    SymTridiagonal::new(diag, vec![-0.5 * kinetic; interior - 1])
}

/// Radial operator with the centrifugal term folded into the stencil.
///
/// Writing `u = r^{L+1} v`, the equation for `v` is the self-adjoint
/// `−½ (w v′)′ / w − γ v / r` with weight `w = r^{2L+2}`, and `v` is smooth at
/// the origin for every `L ≥ 0`. Its conservative three-point form,
/// similarity-scaled by `√w = r^{L+1}`, acts on samples of `u` again:
///
/// ```text
/// diag_i = ½h⁻² [(r_{i+½}/r_i)^{2L+2} + (r_{i−½}/r_i)^{2L+2}] − γ/r_i
/// off_i  = −½h⁻² (r_{i+½}² / (r_i r_{i+1}))^{L+1}
/// ```
///
/// The face next to the inner wall carries no flux, which is the regular
/// boundary condition at the origin.
fn discretize_radial(grid: &Grid, l: f64, gamma: f64) -> SymTridiagonal {
    let h = grid.spacing();
    let kinetic = 0.5 / (h * h);
    let interior = grid.n_points() - 2;
    let rho = 2.0 * l + 2.0;
    let r = |i: usize| grid.point(i);
    let mid = |i: usize| 0.5 * (r(i) + r(i + 1));
    let diag = (1..=interior)
        .map(|i| {
            let outer = (mid(i) / r(i)).powf(rho);
            let inner = if i == 1 {
                0.0
            } else {
                (mid(i - 1) / r(i)).powf(rho)
            };
            kinetic * (outer + inner) - gamma / r(i)
        })
        .collect();
    let off = (1..interior)
        .map(|i| -kinetic * (mid(i).powi(2) / (r(i) * r(i + 1))).powf(0.5 * rho))
        .collect();
    SymTridiagonal::new(diag, off)
}

fn embed_and_normalize(grid: &Grid, interior: Vec<f64>) -> Vec<f64> {
    let mut v = Vec::with_capacity(grid.n_points());
    v.push(0.0);
    v.extend(interior);
    v.push(0.0);
    let norm = (grid.spacing() * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let first = v
        .iter()
        .find(|x| x.abs() > 1e-3 * peak)
        .copied()
        .unwrap_or(1.0);
    let scale = first.signum() / norm;
    v.iter_mut().for_each(|x| *x *= scale);
    v
}

fn solve(
    grid: &Grid,
    build: &dyn Fn(&Grid) -> SymTridiagonal,
    k: usize,
    threshold: Option<f64>,
    tolerance: Tolerance,
) -> Result<EigenResult> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            reason: "at least one eigenpair must be requested",
        });
    }
    let matrix = build(grid);
    let mut eigenvalues = matrix.lowest_eigenvalues(k);
    if let Some(t) = threshold {
        eigenvalues.retain(|&e| e < t);
    }
    let complete = eigenvalues.len() == k;

    let fine = grid.refined();
    let fine_values = build(&fine).lowest_eigenvalues(eigenvalues.len());
    let mut doubling_shifts = Vec::with_capacity(eigenvalues.len());
    for (i, (&coarse, &refined)) in eigenvalues.iter().zip(&fine_values).enumerate() {
        let change = (coarse - refined).abs();
        let limit = tolerance.gate(coarse);
        if !(change <= limit) {
            return Err(Error::NonConvergence {
                index: i,
                change,
                limit,
            });
        }
        doubling_shifts.push(change);
    }

    let eigenvectors = eigenvalues
        .iter()
        .map(|&e| embed_and_normalize(grid, matrix.eigenvector(e)))
        .collect();
    Ok(EigenResult {
        grid: *grid,
        convergence_estimate: doubling_shifts.first().copied().unwrap_or(0.0),
        eigenvalues,
        eigenvectors,
        doubling_shifts,
        complete,
    })
}

/// Lowest `k` eigenpairs of `−½ d²/dr² + L(L+1)/(2r²) − γ/r`, regular at the
/// inner wall and `u = 0` at the outer end, using the default eigenvalue
/// tolerance. Second order in the spacing for every `L ≥ 0`.
pub fn solve_radial(l: f64, gamma: f64, grid: &Grid, k: usize) -> Result<EigenResult> {
    solve_radial_with(l, gamma, grid, k, Tolerance::EIGENVALUE)
}

pub fn solve_radial_with(
    l: f64,
    gamma: f64,
    grid: &Grid,
    k: usize,
    tolerance: Tolerance,
) -> Result<EigenResult> {
    if !(grid.x_min() > 0.0) {
        return Err(Error::InvalidGrid(
            "radial grid must exclude the origin (x_min > 0)".into(),
        ));
    }
    // Box states of a finite grid are positive; bound states are negative.
    let result = solve(
        grid,
        &|g: &Grid| discretize_radial(g, l, gamma),
        k,
        Some(0.0),
        tolerance,
    )?;
    if !result.complete {
        return Err(Error::InsufficientBoundStates {
            requested: k,
            found: result.eigenvalues.len(),
        });
    }
    Ok(result)
}

/// Lowest `k` eigenpairs of `−½ d²/dx² + V(x)` with Dirichlet ends. When a
/// `threshold` is given only eigenvalues below it are kept and
/// [`EigenResult::complete`] reports whether all `k` were found.
pub fn solve_fullline(
    potential: &dyn Fn(f64) -> f64,
    grid: &Grid,
    k: usize,
    threshold: Option<f64>,
    tolerance: Tolerance,
) -> Result<EigenResult> {
    solve(
        grid,
        &|g: &Grid| discretize(g, potential),
        k,
        threshold,
        tolerance,
    )
}
