//! Closed algebra of radial functions `u(r) = r^s · e^(−κr) · P(r)`.
//!
//! Differentiation, the ladder operators `A±_L` and the radial Hamiltonian
//! `H_L` all map this class to itself, shifting `s` by a small integer.
//! Inner products reduce termwise to `∫₀^∞ r^a e^(−br) dr = Γ(a+1)/b^(a+1)`,
//! evaluated in log space with a real-argument log-gamma because `s` is
//! irrational whenever `|M|` is.
//!
//! Functions are kept canonical: `P(0) ≠ 0` (low powers of `r` are folded
//! into `s`), and coefficients that cancel to below
//! [`polynomial::TRIM_THRESHOLD`] of the contributing terms are dropped.

mod gamma;
pub mod polynomial;

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use gamma::log_gamma;
pub use polynomial::Polynomial;
use polynomial::TRIM_THRESHOLD;

/// Which ladder operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    /// `A⁺_L = (1/√2)(−d/dr + W_L)`, raises the hierarchy index of the
    /// partner it maps from.
    Raise,
    /// `A⁻_L = (1/√2)(d/dr + W_L)`, annihilates the lowest rung.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialFunction {
    s: f64,
    kappa: f64,
    poly: Polynomial,
}

/// Two exponents differing by less than this are the same exponent.
const EXPONENT_MATCH: f64 = 1e-9;

impl RadialFunction {
    /// `r^s · e^(−κr) · P(r)`, brought to canonical form.
    pub fn new(s: f64, kappa: f64, poly: Polynomial) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                reason: "decay rate must be positive",
            });
        }
        if !s.is_finite() {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "exponent must be finite",
            });
        }
        let f = Self { s, kappa, poly }.fold_low_powers();
        f.check_integrable()?;
        Ok(f)
    }

    /// `c · r^s · e^(−κr)`.
    pub fn monomial(c: f64, s: f64, kappa: f64) -> Result<Self> {
        Self::new(s, kappa, Polynomial::constant(c))
    }

    pub fn zero(kappa: f64) -> Self {
        Self {
            s: 0.0,
            kappa,
            poly: Polynomial::zero(),
        }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Power of the leading small-`r` behaviour, `s + lowest power of P`.
    pub fn leading_power(&self) -> Option<f64> {
        self.poly.lowest_power().map(|k| self.s + k as f64)
    }

    fn fold_low_powers(mut self) -> Self {
        match self.poly.lowest_power() {
            None => Self::zero(self.kappa),
            Some(0) => self,
            Some(k) => {
                self.poly = self.poly.shift_down(k);
                self.s += k as f64;
                self
            }
        }
    }

    fn check_integrable(&self) -> Result<()> {
        match self.leading_power() {
            Some(p) if p <= -0.5 => Err(Error::OriginIntegrability { leading_power: p }),
            _ => Ok(()),
        }
    }

    /// Builds `r^s e^(−κr) · poly`, trimming coefficients below
    /// `TRIM_THRESHOLD · scale`.
    fn from_combination(s: f64, kappa: f64, poly: Polynomial, scale: f64) -> Result<Self> {
        let cut = TRIM_THRESHOLD * scale;
        let trimmed = Polynomial::new(
            poly.coeffs()
                .iter()
                .map(|&c| if c.abs() <= cut { 0.0 } else { c })
                .collect(),
        );
        let f = Self {
            s,
            kappa,
            poly: trimmed,
        }
        .fold_low_powers();
        f.check_integrable()?;
        Ok(f)
    }

    /// `u(r)`; `r = 0` is allowed only where the prefactor is regular.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        if r < 0.0 || r.is_nan() {
            return Err(Error::NonPositiveRadius(r));
        }
        if r == 0.0 {
            return match self.s {
                s if s > 0.0 => Ok(0.0),
                s if s == 0.0 => Ok(self.poly.eval(0.0)),
                _ => Err(Error::NonPositiveRadius(r)),
            };
        }
        Ok((self.s * r.ln() - self.kappa * r).exp() * self.poly.eval(r))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            s: self.s,
            kappa: self.kappa,
            poly: self.poly.scale(c),
        }
        .fold_low_powers()
    }

    /// `u(r)/r^k`, leaving the polynomial untouched. Used for `R = u/r`.
    pub fn divide_by_power(&self, k: f64) -> Result<Self> {
        Self::new(self.s - k, self.kappa, self.poly.clone())
    }

    /// Rewrites both functions over a common `r^s`, returning
    /// `(s, P_self, P_other)`. Exponents must differ by an integer.
    fn aligned(&self, other: &Self) -> Option<(f64, Polynomial, Polynomial)> {
        if self.is_zero() {
            return Some((other.s, Polynomial::zero(), other.poly.clone()));
        }
        if other.is_zero() {
            return Some((self.s, self.poly.clone(), Polynomial::zero()));
        }
        let diff = self.s - other.s;
        let k = diff.round();
        if (diff - k).abs() > EXPONENT_MATCH {
            return None;
        }
        if k >= 0.0 {
            Some((other.s, self.poly.shift_up(k as usize), other.poly.clone()))
        } else {
            Some((
                self.s,
                self.poly.clone(),
                other.poly.shift_up((-k) as usize),
            ))
        }
    }

    /// Pointwise sum. Both functions must share `κ` and have exponents that
    /// differ by an integer; no coefficient trimming is applied.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.kappa - other.kappa).abs() > EXPONENT_MATCH * self.kappa.max(other.kappa) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: other.kappa,
                reason: "cannot add functions with different decay rates",
            });
        }
        let (s, p, q) = self.aligned(other).ok_or(Error::InvalidParameter {
            name: "s",
            value: other.s,
            reason: "exponents must differ by an integer",
        })?;
        Self::new(s, self.kappa, &p + &q)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    /// `d/dr[r^s e^(−κr) P] = r^(s−1) e^(−κr) [sP + rP′ − κrP]`.
    pub fn differentiate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (poly, scale) = self.derivative_poly();
        // The derivative of an integrable function can fail the
        // square-integrability test (e.g. r^0.2), so skip that check here.
        let cut = TRIM_THRESHOLD * scale;
        Self {
            s: self.s - 1.0,
            kappa: self.kappa,
            poly: Polynomial::new(
                poly.coeffs()
                    .iter()
                    .map(|&c| if c.abs() <= cut { 0.0 } else { c })
                    .collect(),
            ),
        }
        .fold_low_powers()
    }

    /// Polynomial part of the derivative over `r^(s−1)`, and the largest
    /// magnitude among the terms that were combined.
    fn derivative_poly(&self) -> (Polynomial, f64) {
        let a = self.poly.scale(self.s);
        let b = self.poly.derivative().shift_up(1);
        let c = self.poly.shift_up(1).scale(-self.kappa);
        let scale = a.max_abs().max(b.max_abs()).max(c.max_abs());
        (&(&a + &b) + &c, scale)
    }

    /// `(1/√2)(∓u′ − (L+1)u/r + γ/(L+1)·u)`.
    pub fn apply_ladder(&self, l: f64, gamma: f64, ladder: Ladder) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (deriv, dscale) = self.derivative_poly();
        let sign = match ladder {
            Ladder::Raise => -1.0,
            Ladder::Lower => 1.0,
        };
        let d = deriv.scale(sign);
        let centrifugal = self.poly.scale(-(l + 1.0));
        let constant = self.poly.shift_up(1).scale(gamma / (l + 1.0));
        let scale = dscale.max(centrifugal.max_abs()).max(constant.max_abs());
        let poly = (&(&d + &centrifugal) + &constant).scale(FRAC_1_SQRT_2);
        Self::from_combination(self.s - 1.0, self.kappa, poly, scale * FRAC_1_SQRT_2)
    }

    /// `H_L u = −u″/2 + L(L+1)/(2r²)·u − γ/r·u`.
    pub fn apply_radial_hamiltonian(&self, l: f64, gamma: f64) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        // u′ = r^(s−1) e^(−κr) Q with Q = sP + rP′ − κrP, then
        // u″ = r^(s−2) e^(−κr) [(s−1)Q + rQ′ − κrQ].
        let (q, _) = self.derivative_poly();
        let a = q.scale(self.s - 1.0);
        let b = q.derivative().shift_up(1);
        let c = q.shift_up(1).scale(-self.kappa);
        let kinetic = [a, b, c].map(|p| p.scale(-0.5));
        let centrifugal = self.poly.scale(0.5 * l * (l + 1.0));
        let coulomb = self.poly.shift_up(1).scale(-gamma);
        let scale = kinetic
            .iter()
            .chain([&centrifugal, &coulomb])
            .fold(0.0f64, |m, p| m.max(p.max_abs()));
        let mut poly = &centrifugal + &coulomb;
        for k in &kinetic {
            poly = &poly + k;
        }
        Self::from_combination(self.s - 2.0, self.kappa, poly, scale)
    }

    /// `∫₀^∞ u(r) v(r) dr`, evaluated termwise with gamma integrals.
    pub fn inner_product(&self, other: &Self) -> Result<f64> {
        if self.is_zero() || other.is_zero() {
            return Ok(0.0);
        }
        let a = self.s + other.s;
        let b = self.kappa + other.kappa;
        let prod = &self.poly * &other.poly;
        let low = prod.lowest_power().unwrap_or(0);
        if a + low as f64 <= -1.0 {
            return Err(Error::DivergentIntegral {
                leading_power: a + low as f64,
            });
        }
        let mut sum = 0.0;
        for (k, &c) in prod.coeffs().iter().enumerate().skip(low) {
            if c == 0.0 {
                continue;
            }
            sum += c * gamma::ln_gamma_integral(a + k as f64, b)?.exp();
        }
        Ok(sum)
    }

    pub fn norm(&self) -> Result<f64> {
        Ok(self.inner_product(self)?.max(0.0).sqrt())
    }

    /// `u/‖u‖`, with the lowest-power coefficient made positive.
    pub fn normalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let norm = self.norm()?;
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ZeroFunction);
        }
        let sign = self.poly.coeffs()[0].signum();
        Ok(self.scale(sign / norm))
    }
}
