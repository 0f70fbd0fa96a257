//! Brute-force checks that share no code with the symbolic path:
//! three-point finite-difference eigensolvers for the radial and Morse
//! problems, and Simpson quadrature.

mod compare;
mod grid;
mod quadrature;
mod solve;
pub mod tridiag;

pub use compare::{compare_spectra, compare_values, MatchReport};
pub use grid::{Grid, MIN_POINTS, RADIAL_INNER_CUTOFF};
pub use quadrature::{quadrature, quadrature_with, DEFAULT_RELATIVE_TOLERANCE};
pub use solve::{solve_fullline, solve_radial, solve_radial_with, EigenResult, Tolerance};
