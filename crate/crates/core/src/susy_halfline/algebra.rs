//! Discrete realization of the SUSY algebra.
//!
//! `A⁻_L = (D + W_L)/√2` is discretized with the central difference `D`,
//! which is antisymmetric, so `A⁺_L = (−D + W_L)/√2` is exactly the matrix
//! transpose of `A⁻_L`. The supercharges are the block operators
//!
//! ```text
//!     Q = | 0   0 |      Q† = | 0  A⁺ |      H_ss = {Q, Q†} = | A⁺A⁻   0   |
//!         | A⁻  0 |           | 0  0  |                       |  0    A⁻A⁺ |
//! ```
//!
//! Blocks are banded matrices and absent blocks are structural zeros, so
//! `Q² = 0` holds exactly rather than to rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::kappa;
use crate::oracle::Grid;
use crate::radial_forms::RadialFunction;

/// Square banded matrix; entry `(i, j)` is stored when
/// `−lower ≤ j − i ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Banded {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
}

impl Banded {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        Self {
            n,
            lower,
            upper,
            data: vec![0.0; n * (lower + upper + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn width(&self) -> usize {
        self.lower + self.upper + 1
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.lower < i || j > i + self.upper {
            return None;
        }
        Some(i * self.width() + (j + self.lower - i))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |k| self.data[k])
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.slot(i, j).expect("entry outside band");
        self.data[k] = v;
    }

    fn columns(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n, self.upper, self.lower);
        for i in 0..self.n {
            for j in self.columns(i) {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zeros(self.n, self.lower + other.lower, self.upper + other.upper);
        for i in 0..self.n {
            for k in self.columns(i) {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in other.columns(k) {
                    let idx = out.slot(i, j).expect("product band");
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: f64) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zeros(
            self.n,
            self.lower.max(other.lower),
            self.upper.max(other.upper),
        );
        for i in 0..self.n {
            for j in self.columns(i) {
                let idx = out.slot(i, j).unwrap();
                out.data[idx] += self.get(i, j);
            }
            for j in other.columns(i) {
                let idx = out.slot(i, j).unwrap();
                out.data[idx] += c * other.get(i, j);
            }
        }
        out
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.columns(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn frobenius_norm_squared(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

/// 2×2 block operator on the (bosonic, fermionic) sectors; `None` blocks
/// are exact zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    blocks: [[Option<Banded>; 2]; 2],
}

impl BlockOperator {
    pub fn new(blocks: [[Option<Banded>; 2]; 2]) -> Self {
        Self { blocks }
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&Banded> {
        self.blocks[i][j].as_ref()
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Option::is_none)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out: [[Option<Banded>; 2]; 2] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    if let (Some(a), Some(b)) = (&self.blocks[i][k], &other.blocks[k][j]) {
                        let p = a.matmul(b);
                        *slot = Some(match slot.take() {
                            Some(acc) => acc.add_scaled(&p, 1.0),
                            None => p,
                        });
                    }
                }
            }
        }
        Self { blocks: out }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: f64) -> Self {
        let mut out: [[Option<Banded>; 2]; 2] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = match (&self.blocks[i][j], &other.blocks[i][j]) {
                    (Some(a), Some(b)) => Some(a.add_scaled(b, c)),
                    (Some(a), None) => Some(a.clone()),
                    (None, Some(b)) => Some(Banded::zeros(b.dim(), 0, 0).add_scaled(b, c)),
                    (None, None) => None,
                };
            }
        }
        Self { blocks: out }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .map(Banded::frobenius_norm_squared)
            .sum::<f64>()
            .sqrt()
    }
}

/// `A⁻_L` on every grid node, with zero Dirichlet values beyond the ends.
pub fn lowering_matrix(l: f64, gamma: f64, grid: &Grid) -> Result<Banded> {
    if !(grid.x_min() > 0.0) {
        return Err(Error::InvalidGrid("ladder operators need x_min > 0".into()));
    }
    let n = grid.n_points();
    let h = grid.spacing();
    let k = kappa(l, gamma);
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = Banded::zeros(n, 1, 1);
    for (i, r) in grid.points().enumerate() {
        a.set(i, i, c * (-(l + 1.0) / r + k));
        if i + 1 < n {
            a.set(i, i + 1, c / (2.0 * h));
        }
        if i > 0 {
            a.set(i, i - 1, -c / (2.0 * h));
        }
    }
    Ok(a)
}

/// Outcome of [`verify_susy_algebra`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub l: f64,
    pub gamma: f64,
    pub grid: Grid,
    /// `‖Q²‖_F`.
    pub q_squared_norm: f64,
    /// `‖(Q†)²‖_F`.
    pub qdag_squared_norm: f64,
    /// `‖{Q, Q†} − diag(A⁺A⁻, A⁻A⁺)‖_F`.
    pub anticommutator_defect: f64,
    /// `‖[Q, H_ss]‖_F / ‖H_ss‖_F`.
    pub commutator_relative: f64,
    /// Relative error of `A⁺A⁻ f` against `𝓗_L f` on interior nodes.
    pub factorization_error: f64,
    /// Same on the doubled grid.
    pub factorization_error_refined: f64,
    /// `log₂` of the error ratio under grid doubling.
    pub observed_order: f64,
}

/// Tolerance on `‖[Q, H_ss]‖/‖H_ss‖`.
pub const COMMUTATOR_TOLERANCE: f64 = 1e-10;
/// Largest factorization error accepted on the coarse grid.
pub const TRUNCATION_BOUND: f64 = 1e-2;

impl AlgebraReport {
    pub fn nilpotent(&self) -> bool {
        self.q_squared_norm == 0.0 && self.qdag_squared_norm == 0.0
    }

    pub fn second_order(&self) -> bool {
        (self.observed_order - 2.0).abs() <= 0.25
    }

    pub fn passed(&self) -> bool {
        self.nilpotent()
            && self.anticommutator_defect == 0.0
            && self.commutator_relative <= COMMUTATOR_TOLERANCE
            && self.second_order()
    }
}

/// Relative interior error of the discrete `A⁺A⁻` acting on
/// `f = r^(L+5) e^(−κ_L r)` against the exact `𝓗_L f`.
fn factorization_error(l: f64, gamma: f64, grid: &Grid) -> Result<f64> {
    let lower = lowering_matrix(l, gamma, grid)?;
    let product = lower.transpose().matmul(&lower);
    let k = kappa(l, gamma);
    let f = RadialFunction::monomial(1.0, l + 5.0, k)?;
    let hf = f
        .apply_radial_hamiltonian(l, gamma)?
        .try_add(&f.scale(0.5 * k * k))?;
    let samples: Vec<f64> = grid
        .points()
        .map(|r| f.evaluate(r))
        .collect::<Result<_>>()?;
    let discrete = product.apply(&samples);
    let n = grid.n_points();
    let (mut num, mut den) = (0.0, 0.0);
    // Nodes next to the ends see the Dirichlet padding; skip two each side.
    for (i, r) in grid.points().enumerate().take(n - 2).skip(2) {
        let exact = hf.evaluate(r)?;
        num += (discrete[i] - exact).powi(2);
        den += exact * exact;
    }
    Ok((num / den).sqrt())
}

/// Builds `Q`, `Q†` and `H_ss` from the discretized ladder operators of
/// `𝓗_L` and checks the algebra, plus second-order convergence of
/// `A⁺A⁻ → 𝓗_L` under one grid doubling.
pub fn verify_susy_algebra(l: f64, gamma: f64, grid: &Grid) -> Result<AlgebraReport> {
    let lower = lowering_matrix(l, gamma, grid)?;
    let raise = lower.transpose();
    let q = BlockOperator::new([[None, None], [Some(lower.clone()), None]]);
    let qdag = BlockOperator::new([[None, Some(raise.clone())], [None, None]]);

    let q2 = q.matmul(&q);
    let qdag2 = qdag.matmul(&qdag);
    let h_ss = q.matmul(&qdag).add_scaled(&qdag.matmul(&q), 1.0);
    let expected = BlockOperator::new([
        [Some(raise.matmul(&lower)), None],
        [None, Some(lower.matmul(&raise))],
    ]);
    let anticommutator_defect = h_ss.add_scaled(&expected, -1.0).frobenius_norm();
    let commutator = q.matmul(&h_ss).add_scaled(&h_ss.matmul(&q), -1.0);
    let commutator_relative = commutator.frobenius_norm() / h_ss.frobenius_norm();

    let coarse = factorization_error(l, gamma, grid)?;
    if !(coarse <= TRUNCATION_BOUND) {
        return Err(Error::GridTooCoarse(format!(
            "factorization error {coarse:e} exceeds {TRUNCATION_BOUND:e}"
        )));
    }
    let fine = factorization_error(l, gamma, &grid.refined())?;
    Ok(AlgebraReport {
        l,
        gamma,
        grid: *grid,
        q_squared_norm: q2.frobenius_norm(),
        qdag_squared_norm: qdag2.frobenius_norm(),
        anticommutator_defect,
        commutator_relative,
        factorization_error: coarse,
        factorization_error_refined: fine,
        observed_order: (coarse / fine).log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn banded_product_matches_dense() {
        let n = 6;
        let mut a = Banded::zeros(n, 1, 2);
        let mut b = Banded::zeros(n, 2, 0);
        for i in 0..n {
            for j in 0..n {
                if a.slot(i, j).is_some() {
                    a.set(i, j, (i * 7 + j * 3) as f64 % 5.0 - 2.0);
                }
                if b.slot(i, j).is_some() {
                    b.set(i, j, (i * 2 + j * 5) as f64 % 7.0 - 3.0);
                }
            }
        }
        let c = a.matmul(&b);
        for i in 0..n {
            for j in 0..n {
                let dense: f64 = (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum();
                assert_eq!(c.get(i, j), dense);
            }
        }
        let t = a.transpose();
        assert_eq!(t.get(0, 2), a.get(2, 0));
        assert_eq!(t.get(3, 1), a.get(1, 3));
    }

    #[test]
    fn raising_is_transpose_of_lowering() {
        let grid = Grid::new(1e-3, 40.0, 200).unwrap();
        let a = lowering_matrix(0.5, 1.0, &grid).unwrap();
        let t = a.transpose();
        let h = grid.spacing();
        // Off-diagonals of A⁺ carry −d/dr.
        assert!((t.get(3, 4) + std::f64::consts::FRAC_1_SQRT_2 / (2.0 * h)).abs() < 1e-12);
        assert_eq!(t.get(5, 5), a.get(5, 5));
    }

    #[test]
    fn nilpotent_supercharges() {
        let grid = Grid::new(1e-3, 40.0, 500).unwrap();
        let rep = verify_susy_algebra(1.0, 1.0, &grid).unwrap();
        assert_eq!(rep.q_squared_norm, 0.0);
        assert_eq!(rep.qdag_squared_norm, 0.0);
        assert_eq!(rep.anticommutator_defect, 0.0);
        assert!(rep.commutator_relative <= COMMUTATOR_TOLERANCE);
    }

    #[test]
    fn second_order_factorization() {
        let grid = Grid::new(1e-3, 40.0, 2000).unwrap();
        let rep = verify_susy_algebra(0.0, 1.0, &grid).unwrap();
        assert!(rep.second_order(), "order {}", rep.observed_order);
        assert!(rep.passed());
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let grid = Grid::new(1e-3, 400.0, 64).unwrap();
        assert!(matches!(
            verify_susy_algebra(0.0, 1.0, &grid),
            Err(Error::GridTooCoarse(_))
        ));
    }
}
