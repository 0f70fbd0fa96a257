//! SUSY formulation on the half-line `r ∈ [0, ∞)`.
//!
//! For each angular label `L` the superpotential
//! `W_L(r) = −(L+1)/r + γ/(L+1)` factorizes the shifted radial operator
//! `𝓗_L = H_L + γ²/(2(L+1)²) = A⁺_L A⁻_L`, and its partner
//! `A⁻_L A⁺_L` is `𝓗_{L+1}` up to a constant. The lowest rung of every
//! `𝓗_L` is annihilated by `A⁻_L`, and `A⁺_L` carries an `H_{L+1}`
//! eigenfunction down to an `H_L` eigenfunction with the same energy, so
//! `u_{N,L}` is obtained from `u_{N,N−1}` by `A⁺_{N−2} … A⁺_L`.

mod algebra;

use serde::{Deserialize, Serialize};

pub use algebra::{verify_susy_algebra, AlgebraReport, Banded, BlockOperator};

use crate::error::{Error, Result};
use crate::model::{allowed_l_values, as_integer, energy_scaled, kappa};
use crate::oracle::{self, EigenResult, Grid, Tolerance};
use crate::radial_forms::{Ladder, RadialFunction};

/// `W_L(r) = −(L+1)/r + γ/(L+1)`.
pub fn superpotential(l: f64, gamma: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok(-(l + 1.0) / r + kappa(l, gamma))
}

/// `W_L′(r) = (L+1)/r²`.
pub fn superpotential_derivative(l: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok((l + 1.0) / (r * r))
}

/// Potential of `𝓗_L`: `L(L+1)/(2r²) − γ/r + γ²/(2(L+1)²)`.
pub fn shifted_potential(l: f64, gamma: f64, r: f64) -> f64 {
    let k = kappa(l, gamma);
    0.5 * l * (l + 1.0) / (r * r) - gamma / r + 0.5 * k * k
}

/// `½(W_L² − W_L′) − V_𝓗L`, identically zero.
pub fn ricatti_residual(l: f64, gamma: f64, r: f64) -> Result<f64> {
    let w = superpotential(l, gamma, r)?;
    let dw = superpotential_derivative(l, r)?;
    Ok(0.5 * (w * w - dw) - shifted_potential(l, gamma, r))
}

/// Potential of the partner `A⁻_L A⁺_L`: `½(W_L² + W_L′)`.
pub fn partner_potential(l: f64, gamma: f64, r: f64) -> Result<f64> {
    let w = superpotential(l, gamma, r)?;
    let dw = superpotential_derivative(l, r)?;
    Ok(0.5 * (w * w + dw))
}

/// Closed form of the partner potential,
/// `(L+1)(L+2)/(2r²) − γ/r + γ²/(2(L+1)²)`.
pub fn partner_potential_closed_form(l: f64, gamma: f64, r: f64) -> f64 {
    let k = kappa(l, gamma);
    0.5 * (l + 1.0) * (l + 2.0) / (r * r) - gamma / r + 0.5 * k * k
}

/// One member of the hierarchy `𝓗_L`, with its lowest rung.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyLevel {
    pub l: f64,
    pub gamma: f64,
    pub ground_state: RadialFunction,
    /// `γ²/(2(L+1)²)`, so that `H_L = 𝓗_L − shift`.
    pub shift: f64,
}

impl HierarchyLevel {
    pub fn new(l: f64, gamma: f64) -> Result<Self> {
        let k = kappa(l, gamma);
        Ok(Self {
            l,
            gamma,
            ground_state: ground_state(l, gamma)?,
            shift: 0.5 * k * k,
        })
    }

    pub fn superpotential(&self, r: f64) -> Result<f64> {
        superpotential(self.l, self.gamma, r)
    }

    /// Potential of `𝓗_L`.
    pub fn shifted_potential(&self, r: f64) -> f64 {
        shifted_potential(self.l, self.gamma, r)
    }

    /// Potential of `H_L`.
    pub fn physical_potential(&self, r: f64) -> f64 {
        self.shifted_potential(r) - self.shift
    }

    /// Energy of the lowest rung under `H_L`.
    pub fn ground_energy(&self) -> f64 {
        -self.shift
    }
}

fn validate_coupling(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "coupling must be positive",
        })
    }
}

fn validate_l(l: f64) -> Result<()> {
    if l.is_finite() && l >= 0.0 {
        Ok(())
    } else {
        Err(Error::InconsistentQuantumNumbers(format!(
            "L = {l} must be non-negative"
        )))
    }
}

/// Normalized lowest rung `r^(L+1) e^(−κ_L r)` of `𝓗_L`.
pub fn ground_state(l: f64, gamma: f64) -> Result<RadialFunction> {
    validate_l(l)?;
    validate_coupling(gamma)?;
    RadialFunction::monomial(1.0, l + 1.0, kappa(l, gamma))?.normalize()
}

/// One step of the ladder construction of `u_{N,L}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum LadderStep {
    LowestRung { l: f64 },
    Raise { l: f64 },
    Normalize,
}

/// A normalized radial eigenfunction together with how it was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenstate {
    pub n: f64,
    pub l: f64,
    pub gamma: f64,
    pub u: RadialFunction,
    pub trace: Vec<LadderStep>,
}

impl Eigenstate {
    /// `ε_N = −γ²/(2N²)`.
    pub fn energy(&self) -> f64 {
        energy_scaled(self.n, self.gamma)
    }

    /// `R = u/r`, normalized under `∫|R|² r² dr`.
    pub fn radial_r(&self) -> Result<RadialFunction> {
        self.u.divide_by_power(1.0)
    }
}

/// Number of raising steps `n′ = N − L − 1` between the lowest rung and
/// `(N, L)`.
pub fn ladder_depth(n: f64, l: f64) -> Result<usize> {
    validate_l(l)?;
    match as_integer(n - l - 1.0) {
        Some(k) if k >= 0 => Ok(k as usize),
        _ => Err(Error::InconsistentQuantumNumbers(format!(
            "N - L - 1 = {} must be a non-negative integer",
            n - l - 1.0
        ))),
    }
}

/// Builds `u_{N,L}`: the normalized lowest rung of `𝓗_{N−1}` raised by
/// `A⁺_{N−2}, …, A⁺_L`, normalized once at the end.
///
/// The hierarchy labels are anchored on `L` (`L + n′, …, L`) so that
/// `N` is snapped to `L + n′ + 1` exactly.
pub fn build_eigenstate(n: f64, l: f64, gamma: f64) -> Result<Eigenstate> {
    validate_coupling(gamma)?;
    let depth = ladder_depth(n, l)?;
    let top = l + depth as f64;
    let mut trace = vec![LadderStep::LowestRung { l: top }];
    let mut u = ground_state(top, gamma)?;
    for j in (0..depth).rev() {
        let label = l + j as f64;
        u = u.apply_ladder(label, gamma, Ladder::Raise)?;
        trace.push(LadderStep::Raise { l: label });
    }
    let u = u.normalize()?;
    trace.push(LadderStep::Normalize);
    Ok(Eigenstate {
        n: top + 1.0,
        l,
        gamma,
        u,
        trace,
    })
}

pub fn build_eigenfunction(n: f64, l: f64, gamma: f64) -> Result<RadialFunction> {
    Ok(build_eigenstate(n, l, gamma)?.u)
}

/// `R_{N,L} = u_{N,L}/r`.
pub fn radial_r(n: f64, l: f64, gamma: f64) -> Result<RadialFunction> {
    build_eigenstate(n, l, gamma)?.radial_r()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: f64,
    pub l: f64,
    pub energy_analytic: f64,
    pub energy_oracle: Option<f64>,
    pub builder_trace: Vec<LadderStep>,
}

impl SpectrumRow {
    pub fn relative_deviation(&self) -> Option<f64> {
        self.energy_oracle
            .map(|e| ((e - self.energy_analytic) / self.energy_analytic).abs())
    }
}

/// Energy table grouped by `N`, one row per allowed `L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub capital_m: f64,
    pub gamma: f64,
    pub rows: Vec<SpectrumRow>,
}

/// Analytic spectrum for `N = |M|+1, …, |M|+n_levels`.
pub fn spectrum(capital_m: f64, n_levels: usize, gamma: f64) -> Result<SpectrumReport> {
    validate_coupling(gamma)?;
    if n_levels == 0 {
        return Err(Error::InvalidParameter {
            name: "n_levels",
            value: 0.0,
            reason: "at least one level is required",
        });
    }
    let mut rows = Vec::new();
    for level in 1..=n_levels {
        let n = capital_m + level as f64;
        let energy = energy_scaled(n, gamma);
        for l in allowed_l_values(n, capital_m)? {
            let depth = ladder_depth(n, l)?;
            let mut trace = vec![LadderStep::LowestRung {
                l: l + depth as f64,
            }];
            trace.extend(
                (0..depth)
                    .rev()
                    .map(|j| LadderStep::Raise { l: l + j as f64 }),
            );
            trace.push(LadderStep::Normalize);
            rows.push(SpectrumRow {
                n,
                l,
                energy_analytic: energy,
                energy_oracle: None,
                builder_trace: trace,
            });
        }
    }
    Ok(SpectrumReport {
        capital_m,
        gamma,
        rows,
    })
}

/// Overrides for the oracle's default radial grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GridOverride {
    pub n_points: Option<usize>,
    pub x_max: Option<f64>,
}

impl GridOverride {
    pub fn radial(&self, l: f64, gamma: f64, n_max: f64) -> Result<Grid> {
        let default = Grid::radial_default(l, gamma, n_max)?;
        Grid::new(
            default.x_min(),
            self.x_max.unwrap_or(default.x_max()),
            self.n_points.unwrap_or(default.n_points()),
        )
    }
}

impl SpectrumReport {
    /// Fills `energy_oracle` by solving `H_L` on a finite-difference grid
    /// for every distinct `L` in the table.
    pub fn attach_oracle(&mut self, grids: GridOverride, tolerance: Tolerance) -> Result<()> {
        let mut labels: Vec<f64> = Vec::new();
        for row in &self.rows {
            if !labels.iter().any(|&l| (l - row.l).abs() < 1e-9) {
                labels.push(row.l);
            }
        }
        for l in labels {
            let n_max = self
                .rows
                .iter()
                .filter(|r| (r.l - l).abs() < 1e-9)
                .fold(0.0f64, |m, r| m.max(r.n));
            let k = ladder_depth(n_max, l)? + 1;
            let grid = grids.radial(l, self.gamma, n_max)?;
            let solved = oracle::solve_radial_with(l, self.gamma, &grid, k, tolerance)?;
            for row in self.rows.iter_mut().filter(|r| (r.l - l).abs() < 1e-9) {
                let idx = ladder_depth(row.n, l)?;
                row.energy_oracle = solved.eigenvalues.get(idx).copied();
            }
        }
        Ok(())
    }

    /// Distinct `N` values, ascending.
    pub fn levels(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for row in &self.rows {
            if out.last().is_none_or(|&n| (n - row.n).abs() > 1e-9) {
                out.push(row.n);
            }
        }
        out
    }
}

/// `|⟨u_fd, u_sym⟩|` with the oracle eigenvector sampled on its grid.
pub fn oracle_overlap(solved: &EigenResult, index: usize, u: &RadialFunction) -> Result<f64> {
    let grid = &solved.grid;
    let v = &solved.eigenvectors[index];
    let mut sum = 0.0;
    for (i, r) in grid.points().enumerate() {
        sum += v[i] * u.evaluate(r)?;
    }
    Ok((sum * grid.spacing()).abs())
}
