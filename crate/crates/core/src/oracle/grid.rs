use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 64;

/// Uniform grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }

    /// Same interval with the spacing halved; every old node is kept.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    /// Default grid for the radial problem at angular label `l`, sized for
    /// states up to level `n_max`. Every such state decays like
    /// `r^N e^{−γr/N}`, whose square peaks at `N²/γ`; the outer edge sits at
    /// `cN²/γ` with `c − 1 − ln c = 20/N`, where the tail has dropped by
    /// `e⁻⁴⁰`. The spacing stays below `0.003 (L+1)/γ`.
    pub fn radial_default(l: f64, gamma: f64, n_max: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "default radial grid needs a positive coupling",
            });
        }
        let n_max = n_max.max(l + 1.0);
        let mut c = 2.0f64;
        for _ in 0..200 {
            c = 1.0 + 20.0 / n_max + c.ln();
        }
        let x_max = c * n_max * n_max / gamma;
        let h = 0.003 * (l + 1.0) / gamma;
        let n = ((x_max / h).ceil() as usize + 1).max(8000);
        Self::new(RADIAL_INNER_CUTOFF, x_max, n)
    }

    /// Default window for the Morse problems: `[x_c − 12, x_c + 6]` around
    /// the well minimum `x_c = ln N²`, widened on the left when a shallow
    /// bound state with decay rate `min_decay` needs more room.
    pub fn morse_default(n_label: f64, min_decay: f64) -> Result<Self> {
        let xc = (n_label * n_label).ln();
        let left = 12.0f64.max(6.0 / min_decay);
        let width = left + 6.0;
        let n = ((width / MORSE_SPACING).ceil() as usize + 1).max(4000);
        Self::new(xc - left, xc + 6.0, n)
    }
}

/// Inner edge of the default radial grid; the sliver `[0, r_min]` is
/// dropped from the domain.
pub const RADIAL_INNER_CUTOFF: f64 = 1e-6;

const MORSE_SPACING: f64 = 18.0 / 4000.0;
