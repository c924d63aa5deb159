//! Orthogonal polynomials on the unit circle and the quadrature, interlacing
//! and support results built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: dense complex polynomials and Laurent polynomials.
//! * [`opuc`]: Szegő recurrence, reversed polynomials, norms `e_n`,
//!   second-kind polynomials and Christoffel–Darboux kernels.
//! * [`measures`]: measure specifications, trigonometric moments, Schur
//!   parameter extraction and the `|z - w|^2` Christoffel modification.
//! * [`para`]: invariant para-orthogonal polynomials, their zeros and the
//!   Szegő quadrature rules they generate.
//! * [`sof`]: semi-orthogonal function families, the odd/even `F_n`
//!   sequence and interlacing checks.
//! * [`support`]: zero clouds, accumulation sets and support estimates.
//!
//! ```
//! use szego_core::{opuc::{build_opuc, SchurSequence}, para::{make_pop, make_rule}};
//! use num_complex::Complex64;
//!
//! let schur = SchurSequence::lebesgue(4);
//! let table = build_opuc(&schur, 4).unwrap();
//! let one = Complex64::new(1.0, 0.0);
//! let pop = make_pop(&table, 4, one, -one).unwrap();
//! let rule = make_rule(&table, &pop, 0.0).unwrap();
//! assert!(rule.weights.iter().all(|h| (h - 0.25).abs() < 1e-12));
//! ```

pub mod arcs;
pub mod circle;
mod error;
pub mod format;
pub mod gauss;
pub mod measures;
pub mod opuc;
pub mod para;
pub mod poly;
pub mod sof;
pub mod support;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Maps `theta` into `[omega0, omega0 + 2 pi)`.
pub fn wrap_angle(theta: f64, omega0: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut t = (theta - omega0).rem_euclid(tau) + omega0;
    if t >= omega0 + tau {
        t = omega0;
    }
    t
}

/// Distance between two angles measured along the circle.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
