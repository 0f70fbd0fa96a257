//! Physical parameters and quantum-number bookkeeping.
//!
//! The Hartmann potential `V = ησ²ε₀(2a₀/r − ηa₀²/(r² sin²θ))` is fixed by
//! two dimensionless parameters. In atomic units the radial equation only
//! sees the Coulomb-like coupling `γ = ησ²`, and the angular separation
//! contributes the real-valued label `|M| = sqrt(m² + η²σ²)`.
//!
//! `|M|`, `L` and `N` are real in general. Only the differences `L − |M|`
//! and `N − L − 1` are integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for treating a closed-form difference of labels as an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Returns `round(x)` when `x` is an integer to within [`INTEGER_TOLERANCE`].
pub fn as_integer(x: f64) -> Option<i64> {
    if !x.is_finite() {
        return None;
    }
    let r = x.round();
    ((x - r).abs() <= INTEGER_TOLERANCE).then_some(r as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HartmannParams {
    eta: f64,
    sigma: f64,
}

impl HartmannParams {
    pub fn new(eta: f64, sigma: f64) -> Result<Self> {
        for (name, value) in [("eta", eta), ("sigma", sigma)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be a positive finite number",
                });
            }
        }
        Ok(Self { eta, sigma })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Coulomb-like coupling `γ = ησ²`.
    pub fn gamma(&self) -> f64 {
        self.eta * self.sigma * self.sigma
    }

    /// Energy scale `Λ = η²σ⁴|ε₀| = γ²/2`.
    pub fn lambda_scale(&self) -> f64 {
        0.5 * self.gamma() * self.gamma()
    }

    pub fn capital_m(&self, m: i64) -> f64 {
        magnetic_to_capital_m(m, self)
    }

    /// Physical energy `E_N = −Λ/N²`.
    pub fn energy(&self, n: f64) -> f64 {
        -self.lambda_scale() / (n * n)
    }
}

/// `|M| = sqrt(m² + η²σ²)`.
pub fn magnetic_to_capital_m(m: i64, params: &HartmannParams) -> f64 {
    let m = m as f64;
    let es = params.eta * params.sigma;
    m.hypot(es)
}

/// Eigenvalue `ε_N = −γ²/(2N²)` of the scaled radial operator `H_L`.
pub fn energy_scaled(n: f64, gamma: f64) -> f64 {
    let ratio = gamma / n;
    -0.5 * ratio * ratio
}

/// Decay rate `κ_L = γ/(L+1)` of the lowest rung at angular label `L`.
pub fn kappa(l: f64, gamma: f64) -> f64 {
    gamma / (l + 1.0)
}

/// Number of states `N − |M|` sharing the energy of level `N`.
pub fn degeneracy(n: f64, capital_m: f64) -> Result<usize> {
    match as_integer(n - capital_m) {
        Some(k) if k >= 1 => Ok(k as usize),
        _ => Err(Error::InconsistentQuantumNumbers(format!(
            "N - |M| = {} must be a positive integer",
            n - capital_m
        ))),
    }
}

/// The angular labels `N−1, N−2, …, |M|` that share the energy `E_N`.
pub fn allowed_l_values(n: f64, capital_m: f64) -> Result<Vec<f64>> {
    if !(capital_m.is_finite() && capital_m >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "capital_m",
            value: capital_m,
            reason: "must be non-negative",
        });
    }
    let count = degeneracy(n, capital_m)?;
    Ok((0..count).map(|j| n - 1.0 - j as f64).collect())
}

/// Full label set of one state: `(m, |M|, ν′, L, n′, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub m: i64,
    pub capital_m: f64,
    pub nu_prime: u32,
    pub l: f64,
    pub n_prime: u32,
    pub n: f64,
}

impl QuantumNumbers {
    /// Builds the labels from the integer quantum numbers, so the
    /// consistency relations hold by construction.
    pub fn new(m: i64, nu_prime: u32, n_prime: u32, params: &HartmannParams) -> Self {
        let capital_m = magnetic_to_capital_m(m, params);
        let l = nu_prime as f64 + capital_m;
        let n = l + 1.0 + n_prime as f64;
        Self {
            m,
            capital_m,
            nu_prime,
            l,
            n_prime,
            n,
        }
    }

    /// Recovers the integer labels from real `(N, L)` for a given sector.
    pub fn from_levels(m: i64, n: f64, l: f64, params: &HartmannParams) -> Result<Self> {
        let capital_m = magnetic_to_capital_m(m, params);
        let nu = as_integer(l - capital_m)
            .filter(|&v| v >= 0)
            .ok_or_else(|| {
                Error::InconsistentQuantumNumbers(format!(
                    "L - |M| = {} must be a non-negative integer",
                    l - capital_m
                ))
            })?;
        let np = as_integer(n - l - 1.0).filter(|&v| v >= 0).ok_or_else(|| {
            Error::InconsistentQuantumNumbers(format!(
                "N - L - 1 = {} must be a non-negative integer",
                n - l - 1.0
            ))
        })?;
        Ok(Self::new(m, nu as u32, np as u32, params))
    }

    /// Checks `|M|² = m² + η²σ²`, `L = ν′ + |M|` and `N = L + 1 + n′`.
    pub fn check(&self, params: &HartmannParams) -> Result<()> {
        let es = params.eta() * params.sigma();
        let m = self.m as f64;
        let scale = 1.0 + m * m + es * es;
        if (self.capital_m * self.capital_m - m * m - es * es).abs() > INTEGER_TOLERANCE * scale {
            return Err(Error::InconsistentQuantumNumbers(format!(
                "|M| = {} does not satisfy |M|^2 = m^2 + (eta sigma)^2",
                self.capital_m
            )));
        }
        if (self.l - self.nu_prime as f64 - self.capital_m).abs() > INTEGER_TOLERANCE {
            return Err(Error::InconsistentQuantumNumbers(format!(
                "L = {} differs from nu' + |M|",
                self.l
            )));
        }
        if (self.n - self.l - 1.0 - self.n_prime as f64).abs() > INTEGER_TOLERANCE {
            return Err(Error::InconsistentQuantumNumbers(format!(
                "N = {} differs from L + 1 + n'",
                self.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn capital_m_examples() {
        let p = HartmannParams::new(1.0, 1.0).unwrap();
        assert_eq!(magnetic_to_capital_m(0, &p), 1.0);

        let p = HartmannParams::new(1e-12, 1.0).unwrap();
        assert!((magnetic_to_capital_m(3, &p) - 3.0).abs() < 1e-9);

        let p = HartmannParams::new(1.0, 2f64.sqrt()).unwrap();
        assert!((magnetic_to_capital_m(2, &p) - 2.449489743).abs() < 1e-9);
    }

    #[test]
    fn energies() {
        assert_eq!(energy_scaled(1.0, 1.0), -0.5);
        assert_eq!(energy_scaled(2.0, 1.0), -0.125);
        assert!((energy_scaled(3.0, 2.0) + 2.0 / 9.0).abs() < 1e-15);

        let p = HartmannParams::new(2.0, 1.5).unwrap();
        assert!((p.energy(3.0) - energy_scaled(3.0, p.gamma())).abs() < 1e-15);
        assert!((p.lambda_scale() - 0.5 * 4.0 * 1.5f64.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(0.0, 1.0), 1.0);
        assert!((kappa(1.5, 2.0) - 0.8).abs() < 1e-15);
        assert!((kappa(999.0, 1.0) - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn allowed_l_examples() {
        let ls = allowed_l_values(3.5, 0.5).unwrap();
        assert_eq!(ls, vec![2.5, 1.5, 0.5]);

        let m = 2f64.sqrt();
        let ls = allowed_l_values(m + 1.0, m).unwrap();
        assert_eq!(ls.len(), 1);
        assert!((ls[0] - m).abs() < 1e-12);

        assert_eq!(allowed_l_values(4.0, 1.0).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn allowed_l_rejects_bad_labels() {
        assert!(allowed_l_values(3.3, 1.0).is_err());
        assert!(allowed_l_values(1.0, 1.0).is_err());
        assert!(allowed_l_values(0.5, 1.5).is_err());
        assert!(allowed_l_values(3.0, -1.0).is_err());
    }

    #[test]
    fn params_reject_non_positive() {
        assert!(HartmannParams::new(0.0, 1.0).is_err());
        assert!(HartmannParams::new(1.0, -2.0).is_err());
        assert!(HartmannParams::new(f64::NAN, 1.0).is_err());
        let p = HartmannParams::new(1.5, 2.0).unwrap();
        assert_eq!(p.gamma(), 6.0);
    }

    #[test]
    fn quantum_numbers_round_trip() {
        let p = HartmannParams::new(1.3, 0.7).unwrap();
        let q = QuantumNumbers::new(2, 1, 3, &p);
        q.check(&p).unwrap();
        let back = QuantumNumbers::from_levels(2, q.n, q.l, &p).unwrap();
        assert_eq!(back.nu_prime, 1);
        assert_eq!(back.n_prime, 3);
        assert!(QuantumNumbers::from_levels(2, q.n + 0.5, q.l, &p).is_err());
        assert!(QuantumNumbers::from_levels(2, q.n, q.capital_m - 1.0, &p).is_err());
    }

    proptest! {
        #[test]
        fn capital_m_relation(m in -20i64..20, eta in 0.1f64..10.0, sigma in 0.1f64..10.0) {
            let p = HartmannParams::new(eta, sigma).unwrap();
            let cm = magnetic_to_capital_m(m, &p);
            let es2 = (eta * sigma).powi(2);
            let mf = m as f64;
            prop_assert!((cm * cm - mf * mf - es2).abs() <= 1e-12 * (1.0 + mf * mf + es2));
        }

        #[test]
        fn energy_monotone_and_quadratic_in_gamma(n in 1.0f64..50.0, dn in 0.01f64..5.0, g in 0.1f64..10.0) {
            prop_assert!(energy_scaled(n, g) < energy_scaled(n + dn, g));
            let e1 = energy_scaled(n, g);
            let e2 = energy_scaled(n, 2.0 * g);
            prop_assert!((e2 - 4.0 * e1).abs() <= 1e-15 * e2.abs());
        }

        #[test]
        fn allowed_l_has_unit_gaps(cm in 0.0f64..10.0, k in 1usize..12) {
            let n = cm + k as f64;
            let ls = allowed_l_values(n, cm).unwrap();
            prop_assert_eq!(ls.len(), k);
            for w in ls.windows(2) {
                prop_assert!((w[0] - w[1] - 1.0).abs() < 1e-12);
            }
            prop_assert!((ls[k - 1] - cm).abs() < 1e-9);
        }
    }
}
