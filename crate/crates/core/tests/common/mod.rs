//! Reference values computed independently of the library.

#![allow(dead_code)]

/// `ln Γ(x)` for `x > 0` by upward recurrence and the Stirling series.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut x = x;
    let mut acc = 0.0;
    while x < 20.0 {
        acc -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    acc + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// A function `r^s e^(−κr) Σ cₖ rᵏ` written out by hand.
#[derive(Debug, Clone)]
pub struct Expected {
    pub s: f64,
    pub kappa: f64,
    pub coeffs: Vec<f64>,
}

/// `R_{|M|+1,|M|}`.
pub fn lowest_rung(m: f64, gamma_c: f64) -> Expected {
    let kappa = gamma_c / (m + 1.0);
    let c = (2.0 * kappa).powf(m + 1.5) / gamma(2.0 * m + 3.0).sqrt();
    Expected {
        s: m,
        kappa,
        coeffs: vec![c],
    }
}

/// `R_{|M|+2,|M|+1}`.
pub fn second_level_top(m: f64, gamma_c: f64) -> Expected {
    let kappa = gamma_c / (m + 2.0);
    let c = (2.0 * kappa).powf(m + 2.5) / gamma(2.0 * m + 5.0).sqrt();
    Expected {
        s: m + 1.0,
        kappa,
        coeffs: vec![c],
    }
}

/// `R_{|M|+2,|M|}`, written with the sign convention that makes the
/// value at the origin positive.
pub fn second_level_bottom(m: f64, gamma_c: f64) -> Expected {
    let kappa = gamma_c / (m + 2.0);
    let pre = (2.0 * kappa).powf(m + 1.5) * (1.0 / (2.0 * (m + 2.0) * gamma(2.0 * m + 3.0))).sqrt();
    Expected {
        s: m,
        kappa,
        coeffs: vec![pre * (2.0 * m + 2.0), -pre * 2.0 * kappa],
    }
}

impl Expected {
    pub fn eval(&self, r: f64) -> f64 {
        let p: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * r.powi(k as i32))
            .sum();
        r.powf(self.s) * (-self.kappa * r).exp() * p
    }
}

/// `r = t²` substitution so that non-integer powers at the origin do not
/// spoil Simpson convergence.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, r_max: f64, rel: f64) -> f64 {
    hartmann_susy::oracle::quadrature_with(|t| 2.0 * t * f(t * t), 0.0, r_max.sqrt(), rel)
        .expect("quadrature converges")
}
