//! SUSY formulation on the full line.
//!
//! With `γr = eˣ` and `u(r) = e^(x/2) ψ(x)` the radial equation at level
//! `N` becomes the Morse problem
//!
//! ```text
//!     −½ψ″ + (e^(2x)/(2N²) − eˣ) ψ = −½(L + ½)² ψ,
//! ```
//!
//! where the angular label `L` now plays the role of the eigenvalue.
//! Adding `½(N − ½)²` makes the ground state (`L = N − 1`) a zero mode of
//! `A⁺₁A⁻₁` with `W₁ = eˣ/N + ½ − N`, and the partner `A⁻₁A⁺₁` is the same
//! Morse form at `N − 1` with coupling `(1 − 1/N)δ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::energy_scaled;
use crate::oracle::{compare_values, solve_fullline, Grid, MatchReport, Tolerance};
use crate::radial_forms::RadialFunction;

/// `x = ln(γr)`.
pub fn to_morse_coordinates(gamma: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "coupling must be positive",
        });
    }
    Ok((gamma * r).ln())
}

/// `r = eˣ/γ`.
pub fn from_morse_coordinates(gamma: f64, x: f64) -> f64 {
    x.exp() / gamma
}

/// A half-line eigenfunction seen on the full line,
/// `ψ(x) = e^(−x/2) u(eˣ/γ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorseEigenfunction {
    u: RadialFunction,
    gamma: f64,
}

/// Wraps `u` as a function of `x`.
pub fn transform_eigenfunction(u: &RadialFunction, gamma: f64) -> Result<MorseEigenfunction> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "coupling must be positive",
        });
    }
    Ok(MorseEigenfunction {
        u: u.clone(),
        gamma,
    })
}

impl MorseEigenfunction {
    pub fn radial(&self) -> &RadialFunction {
        &self.u
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let r = from_morse_coordinates(self.gamma, x);
        Ok((-0.5 * x).exp() * self.u.evaluate(r)?)
    }

    /// Inverse transform, `u(r) = √(γr) ψ(ln γr)`.
    pub fn inverse(&self, r: f64) -> Result<f64> {
        let x = to_morse_coordinates(self.gamma, r)?;
        Ok((0.5 * x).exp() * self.eval(x)?)
    }

    /// `ψ″(x) = e^(−x/2) (¼u + r²u″)` at `r = eˣ/γ`.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        let r = from_morse_coordinates(self.gamma, x);
        let u = self.u.evaluate(r)?;
        let upp = self.u.differentiate().differentiate().evaluate(r)?;
        Ok((-0.5 * x).exp() * (0.25 * u + r * r * upp))
    }

    /// `−½ψ″ + (e^(2x)/(2N²) − eˣ)ψ + ½(L+½)²ψ` at `x`.
    pub fn morse_residual(&self, n_label: f64, l: f64, x: f64) -> Result<f64> {
        let psi = self.eval(x)?;
        let v = morse_potential(n_label, x);
        Ok(-0.5 * self.second_derivative(x)? + (v + 0.5 * (l + 0.5).powi(2)) * psi)
    }

    /// `∫|ψ|² dx`, evaluated exactly as `(1/γ) ∫ u²/r² dr`.
    pub fn line_norm_squared(&self) -> Result<f64> {
        let v = self.u.divide_by_power(1.0)?;
        Ok(v.inner_product(&v)? / self.gamma)
    }
}

/// Unshifted Morse potential `e^(2x)/(2N²) − eˣ`.
pub fn morse_potential(n_label: f64, x: f64) -> f64 {
    let e = x.exp();
    e * e / (2.0 * n_label * n_label) - e
}

/// `½(N − ½)²`, the value that zeroes the ground state.
pub fn morse_shift(n_label: f64) -> f64 {
    0.5 * (n_label - 0.5).powi(2)
}

/// Shifted SUSY eigenvalue `½(N − ½)² − ½(L + ½)²`.
pub fn susy_eigenvalue(n_label: f64, l: f64) -> f64 {
    morse_shift(n_label) - 0.5 * (l + 0.5).powi(2)
}

/// `W₁ = eˣ/N + ½ − N`.
pub fn morse_superpotential(n_label: f64, x: f64) -> f64 {
    x.exp() / n_label + 0.5 - n_label
}

pub fn morse_superpotential_derivative(n_label: f64, x: f64) -> f64 {
    x.exp() / n_label
}

fn residual_scale(terms: &[f64]) -> f64 {
    terms.iter().fold(1.0f64, |m, t| m.max(t.abs()))
}

/// `½(W₁² − W₁′) − V₁`, relative to the largest term involved.
pub fn morse_ricatti_residual(n_label: f64, x: f64) -> f64 {
    let w = morse_superpotential(n_label, x);
    let dw = morse_superpotential_derivative(n_label, x);
    let v = bose_potential(n_label, x);
    (0.5 * (w * w - dw) - v) / residual_scale(&[0.5 * w * w, dw, v])
}

/// `½(W₁² + W₁′) − V₂`, relative to the largest term involved.
pub fn morse_partner_residual(n_label: f64, x: f64) -> f64 {
    let w = morse_superpotential(n_label, x);
    let dw = morse_superpotential_derivative(n_label, x);
    let v = fermi_potential(n_label, x);
    (0.5 * (w * w + dw) - v) / residual_scale(&[0.5 * w * w, dw, v])
}

/// `V₁ = e^(2x)/(2N²) − eˣ + ½(N − ½)²`.
pub fn bose_potential(n_label: f64, x: f64) -> f64 {
    morse_potential(n_label, x) + morse_shift(n_label)
}

/// `V₂ = e^(2x)/(2N²) − (1 − 1/N)eˣ + ½(N − ½)²`.
pub fn fermi_potential(n_label: f64, x: f64) -> f64 {
    let e = x.exp();
    e * e / (2.0 * n_label * n_label) - (1.0 - 1.0 / n_label) * e + morse_shift(n_label)
}

/// The pair `(V₁, V₂)` at level `N`.
pub fn morse_partner_potentials(
    n_label: f64,
) -> (impl Fn(f64) -> f64 + Copy, impl Fn(f64) -> f64 + Copy) {
    (
        move |x| bose_potential(n_label, x),
        move |x| fermi_potential(n_label, x),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Bose,
    Fermi,
}

/// One member of the full-line partner pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseProblem {
    pub n_label: f64,
    /// `δ = ησ²`.
    pub delta: f64,
    pub shift: f64,
    pub sector: Sector,
}

impl MorseProblem {
    pub fn new(n_label: f64, delta: f64, sector: Sector) -> Result<Self> {
        if !(n_label.is_finite() && n_label > 0.0) {
            return Err(Error::InvalidParameter {
                name: "N",
                value: n_label,
                reason: "level must be positive",
            });
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: delta,
                reason: "coupling must be positive",
            });
        }
        Ok(Self {
            n_label,
            delta,
            shift: morse_shift(n_label),
            sector,
        })
    }

    pub fn potential(&self, x: f64) -> f64 {
        match self.sector {
            Sector::Bose => bose_potential(self.n_label, x),
            Sector::Fermi => fermi_potential(self.n_label, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartnerMapResult {
    pub n_prime: f64,
    pub delta_prime: f64,
    /// `δ′/N′ − δ/N`.
    pub energy_check: f64,
}

/// `(N, δ) → (N − 1, (1 − 1/N)δ)`.
pub fn partner_map(n_label: f64, delta: f64) -> Result<PartnerMapResult> {
    if !(n_label > 1.0) || !n_label.is_finite() {
        return Err(Error::NoPartner(n_label));
    }
    let n_prime = n_label - 1.0;
    // Written as δ(N−1)/N so that δ′/N′ reproduces δ/N to an ulp or two.
    let delta_prime = delta * n_prime / n_label;
    Ok(PartnerMapResult {
        n_prime,
        delta_prime,
        energy_check: delta_prime / n_prime - delta / n_label,
    })
}

/// Relative difference between the scaled energies of a state and its
/// partner, `E(N, γ=δ)` against `E(N′, γ=δ′)`.
pub fn partner_energy_mismatch(n_label: f64, delta: f64) -> Result<f64> {
    let p = partner_map(n_label, delta)?;
    let e = energy_scaled(n_label, delta);
    let e_prime = energy_scaled(p.n_prime, p.delta_prime);
    Ok(((e - e_prime) / e).abs())
}

/// Bound-state labels `L = N − 1 − n > −½` of the well at level `N`,
/// descending.
pub fn morse_bound_labels(n_label: f64) -> Vec<f64> {
    (0..)
        .map(|n| n_label - 1.0 - n as f64)
        .take_while(|&l| l > -0.5)
        .collect()
}

/// Closest approach of a bound label to the threshold that the default
/// window can resolve.
pub const MIN_THRESHOLD_DISTANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralityReport {
    pub n_label: f64,
    pub grid: Grid,
    pub threshold: f64,
    /// Bound labels of `V₁`, descending.
    pub labels: Vec<f64>,
    /// SUSY eigenvalues `½(N−½)² − ½(L+½)²` for `labels`.
    pub analytic: Vec<f64>,
    pub bose: Vec<f64>,
    pub fermi: Vec<f64>,
    /// `V₁`'s lowest eigenvalue, which has no partner.
    pub missing_ground: f64,
    /// `V₂` paired against `V₁` without its ground state.
    pub pairing: MatchReport,
    /// Largest deviation of either oracle spectrum from `analytic`.
    pub max_analytic_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Solves both partner potentials with the finite-difference oracle and
/// checks that `V₂` reproduces `V₁` with its ground state removed.
pub fn verify_partner_spectra(n_label: f64, grid: Option<Grid>) -> Result<IsospectralityReport> {
    verify_partner_spectra_with(n_label, grid, Tolerance::MORSE)
}

pub fn verify_partner_spectra_with(
    n_label: f64,
    grid: Option<Grid>,
    tolerance: Tolerance,
) -> Result<IsospectralityReport> {
    if !(n_label >= 2.0) || !n_label.is_finite() {
        return Err(Error::NoPartner(n_label));
    }
    let labels = morse_bound_labels(n_label);
    let lowest = *labels.last().expect("N ≥ 2 has bound labels");
    if lowest + 0.5 < MIN_THRESHOLD_DISTANCE {
        return Err(Error::InvalidParameter {
            name: "N",
            value: n_label,
            reason: "a bound state lies too close to threshold to resolve",
        });
    }
    let grid = match grid {
        Some(g) => g,
        None => Grid::morse_default(n_label, lowest + 0.5)?,
    };
    let threshold = morse_shift(n_label);
    let analytic: Vec<f64> = labels
        .iter()
        .map(|&l| susy_eigenvalue(n_label, l))
        .collect();
    let (v1, v2) = morse_partner_potentials(n_label);

    // One more than expected is requested so a spurious extra bound state
    // would be noticed.
    let bose = solve_fullline(&v1, &grid, labels.len() + 1, Some(threshold), tolerance)?;
    let fermi = solve_fullline(&v2, &grid, labels.len(), Some(threshold), tolerance)?;
    if bose.eigenvalues.len() != labels.len() {
        return Err(Error::InsufficientBoundStates {
            requested: labels.len(),
            found: bose.eigenvalues.len(),
        });
    }
    if fermi.eigenvalues.len() + 1 != labels.len() {
        return Err(Error::SpectrumLengthMismatch {
            left: labels.len() - 1,
            right: fermi.eigenvalues.len(),
        });
    }

    let tol = tolerance.allowed(0.0);
    let pairing = compare_values(&bose.eigenvalues, &fermi.eigenvalues, true, tol)?;
    let dev_bose = bose
        .eigenvalues
        .iter()
        .zip(&analytic)
        .map(|(a, b)| (a - b).abs());
    let dev_fermi = fermi
        .eigenvalues
        .iter()
        .zip(&analytic[1..])
        .map(|(a, b)| (a - b).abs());
    let max_analytic_deviation = dev_bose.chain(dev_fermi).fold(0.0f64, f64::max);
    let passed = pairing.passed && max_analytic_deviation <= tol;
    Ok(IsospectralityReport {
        n_label,
        grid,
        threshold,
        missing_ground: bose.eigenvalues[0],
        labels,
        analytic,
        bose: bose.eigenvalues,
        fermi: fermi.eigenvalues,
        pairing,
        max_analytic_deviation,
        tolerance: tol,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy_halfline::build_eigenfunction;

    #[test]
    fn coordinates() {
        assert_eq!(to_morse_coordinates(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(to_morse_coordinates(2.0, 0.5).unwrap(), 0.0);
        assert!((to_morse_coordinates(1.0, 3f64.exp()).unwrap() - 3.0).abs() < 1e-15);
        assert!(matches!(
            to_morse_coordinates(1.0, 0.0),
            Err(Error::NonPositiveRadius(_))
        ));
    }

    #[test]
    fn hydrogen_ground_state_transform() {
        let u = RadialFunction::monomial(2.0, 1.0, 1.0).unwrap();
        let psi = transform_eigenfunction(&u, 1.0).unwrap();
        for x in [-2.0f64, -0.5, 0.3] {
            let expected = 2.0 * (0.5 * x).exp() * (-x.exp()).exp();
            assert!((psi.eval(x).unwrap() - expected).abs() < 1e-14);
        }
        // Stationary at eˣ = ½.
        let x0 = 0.5f64.ln();
        let d = (psi.eval(x0 + 1e-5).unwrap() - psi.eval(x0 - 1e-5).unwrap()) / 2e-5;
        assert!(d.abs() < 1e-8);
    }

    #[test]
    fn round_trip() {
        let u = build_eigenfunction(3.0, 1.0, 1.3).unwrap();
        let psi = transform_eigenfunction(&u, 1.3).unwrap();
        for r in [0.01, 0.4, 1.0, 3.7, 12.0] {
            let a = u.evaluate(r).unwrap();
            assert!((psi.inverse(r).unwrap() - a).abs() <= 1e-12 * a.abs().max(1e-3));
        }
    }

    #[test]
    fn morse_equation_residual() {
        for (n, l, gamma) in [
            (1.0, 0.0, 1.0),
            (3.0, 1.0, 1.0),
            (3.5, 0.5, 2.0),
            (4.0, 0.0, 0.7),
        ] {
            let u = build_eigenfunction(n, l, gamma).unwrap();
            let psi = transform_eigenfunction(&u, gamma).unwrap();
            for i in 0..200 {
                let x = -8.0 + 0.06 * i as f64;
                assert!(psi.morse_residual(n, l, x).unwrap().abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn line_norm_matches_quadrature() {
        let u = build_eigenfunction(2.0, 0.0, 1.0).unwrap();
        let psi = transform_eigenfunction(&u, 1.0).unwrap();
        let exact = psi.line_norm_squared().unwrap();
        let numeric =
            crate::oracle::quadrature(|x| psi.eval(x).unwrap().powi(2), -40.0, 5.0).unwrap();
        assert!((exact - numeric).abs() < 1e-8 * exact);
    }

    #[test]
    fn susy_eigenvalues() {
        assert_eq!(susy_eigenvalue(3.0, 2.0), 0.0);
        assert_eq!(susy_eigenvalue(3.0, 1.0), 2.0);
        assert_eq!(susy_eigenvalue(3.0, 0.0), 3.0);
    }

    #[test]
    fn superpotential_values() {
        assert_eq!(morse_superpotential(1.0, 0.0), 0.5);
        assert!((morse_superpotential(10.0, -30.0) + 9.5).abs() < 1e-12);
        assert!(morse_ricatti_residual(2.5, 0.7).abs() < 1e-12);
    }

    #[test]
    fn partner_identities() {
        for n in [1.5, 2.0, 3.0, 4.7] {
            for i in 0..=100 {
                let x = -10.0 + 0.15 * i as f64;
                assert!(morse_ricatti_residual(n, x).abs() <= 1e-12);
                assert!(morse_partner_residual(n, x).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn partner_potentials() {
        let (v1, v2) = morse_partner_potentials(2.0);
        assert!((v2(0.0) - v1(0.0) - 0.5).abs() < 1e-15);
        let shift = morse_shift(2.0);
        assert!((v1(-60.0) - shift).abs() < 1e-15);
        assert!((v2(-60.0) - shift).abs() < 1e-15);
        let (_, v2) = morse_partner_potentials(3.0);
        let x: f64 = 0.4;
        let bracket = (2.0 * x).exp() / 18.0 - (1.0 - 1.0 / 3.0) * x.exp() + morse_shift(3.0);
        assert_eq!(v2(x), bracket);
    }

    #[test]
    fn partner_map_examples() {
        let p = partner_map(3.0, 1.0).unwrap();
        assert_eq!(p.n_prime, 2.0);
        assert!((p.delta_prime - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(p.energy_check, 0.0);
        let p = partner_map(2.0, 4.0).unwrap();
        assert_eq!((p.n_prime, p.delta_prime), (1.0, 2.0));
        let p = partner_map(4.0, 2.0).unwrap();
        assert!((p.delta_prime - 1.5).abs() < 1e-15);
        assert!(matches!(partner_map(1.0, 1.0), Err(Error::NoPartner(_))));
    }

    #[test]
    fn composed_map() {
        let (n, d) = (5.3, 0.77);
        let p = partner_map(n, d).unwrap();
        let q = partner_map(p.n_prime, p.delta_prime).unwrap();
        assert!((q.n_prime - (n - 2.0)).abs() < 1e-15);
        let expected = (1.0 - 1.0 / n) * (1.0 - 1.0 / (n - 1.0)) * d;
        assert!((q.delta_prime - expected).abs() < 1e-15);
        assert!(((q.delta_prime / q.n_prime) - d / n).abs() <= 1e-15 * d / n);
    }

    #[test]
    fn bound_labels() {
        assert_eq!(morse_bound_labels(3.0), vec![2.0, 1.0, 0.0]);
        assert_eq!(morse_bound_labels(2.0), vec![1.0, 0.0]);
        assert_eq!(morse_bound_labels(1.0), vec![0.0]);
        assert_eq!(morse_bound_labels(2.2).len(), 2);
        assert_eq!(morse_bound_labels(2.6).len(), 3);
    }

    #[test]
    fn isospectral_partners_n2() {
        let rep = verify_partner_spectra(2.0, None).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.fermi.len(), 1);
        assert!((rep.fermi[0] - 1.0).abs() < 1e-3);
        assert!(rep.missing_ground.abs() < 1e-3);
    }

    #[test]
    fn no_partner_below_two() {
        assert!(matches!(
            verify_partner_spectra(1.0, None),
            Err(Error::NoPartner(_))
        ));
    }

    #[test]
    fn morse_problem_sectors() {
        let b = MorseProblem::new(3.0, 1.0, Sector::Bose).unwrap();
        let f = MorseProblem::new(3.0, 1.0, Sector::Fermi).unwrap();
        assert_eq!(b.shift, 3.125);
        assert!((f.potential(0.0) - b.potential(0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!(MorseProblem::new(0.0, 1.0, Sector::Bose).is_err());
    }
}
