//! Supersymmetric quantum mechanics for the Hartmann ring-shaped potential.
//!
//! Two formulations of the radial problem are implemented side by side:
//!
//! * [`susy_halfline`] works on `r ∈ [0, ∞)`. The superpotential
//!   `W_L = −(L+1)/r + γ/(L+1)` generates ladder operators `A±_L`, and every
//!   radial eigenfunction `u_{N,L}` is built exactly from the lowest rung of
//!   the hierarchy by repeated application of `A⁺`.
//! * [`susy_fullline`] maps the same problem onto `x ∈ (−∞, ∞)` with
//!   `γr = eˣ`, where it becomes a Morse problem whose SUSY partner relates
//!   `(N, δ)` to `(N − 1, (1 − 1/N)δ)`.
//!
//! The symbolic work happens in [`radial_forms`], a closed algebra of
//! functions `r^s · e^(−κr) · P(r)` with gamma-function inner products.
//! [`oracle`] holds finite-difference eigensolvers and quadrature that share
//! no code with the symbolic path and are used to validate it.
//!
//! Atomic units (`μ = ħ = e = 1`) are used everywhere, so `γ = ησ²` and the
//! scaled radial eigenvalue equals the physical energy `E_N = −Λ/N²`.

pub mod error;
pub mod model;
pub mod oracle;
pub mod radial_forms;
pub mod susy_fullline;
pub mod susy_halfline;

pub use error::{Error, Result};
pub use model::{HartmannParams, QuantumNumbers};
pub use radial_forms::{Polynomial, RadialFunction};
