//! Real-valued functions on the circle of the form
//! `g(theta) = phase * e^{-i n theta / 2} * N(e^{i theta})`, and the
//! sign-scan/bisection zero finder used for every POP and SOF.
//!
//! `theta` is always taken in `[omega0, omega0 + 2 pi)`, which fixes the
//! determination of the half-integer power.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::poly::Poly;
use crate::{cis, Error, Result};

/// Relative size of the imaginary part tolerated when realizing `g`.
pub const REALNESS_TOL: f64 = 1e-9;

/// Roots closer than this to `omega0 + 2 pi` are reported at `omega0`.
const SEAM_SNAP: f64 = 1e-11;

/// Sample values below this times the scale are treated as zeros.
const ROUNDING_ZERO: f64 = 1e-14;

/// Initial samples per expected zero; doubled up to `MAX_REFINE` times.
const SAMPLES_PER_ZERO: usize = 16;
const MAX_REFINE: u32 = 6;

#[derive(Clone, Debug)]
pub struct RealCircleFunction {
    numerator: Poly,
    half_order: usize,
    phase: Complex64,
    omega0: f64,
}

impl RealCircleFunction {
    /// `numerator` must make the product real on the circle; this is checked
    /// during zero finding.
    pub fn new(numerator: Poly, half_order: usize, phase: Complex64, omega0: f64) -> Self {
        Self {
            numerator,
            half_order,
            phase,
            omega0,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// The `n` in `e^{-i n theta / 2}`.
    pub fn half_order(&self) -> usize {
        self.half_order
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    fn twist(&self, theta: f64) -> Complex64 {
        self.phase * cis(-(self.half_order as f64) * theta / 2.0)
    }

    /// Complex value before taking the real part.
    pub fn eval_complex(&self, theta: f64) -> Complex64 {
        self.twist(theta) * self.numerator.eval(cis(theta))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_complex(theta).re
    }

    /// `d/dtheta` of the complex value; equals `i z f'(z)` at `z = e^{i theta}`.
    pub fn derivative_complex(&self, theta: f64) -> Complex64 {
        let z = cis(theta);
        let (p, dp) = self.numerator.eval_with_derivative(z);
        let i = Complex64::new(0.0, 1.0);
        self.twist(theta) * (i * z * dp - i * (self.half_order as f64 / 2.0) * p)
    }

    /// Bound on `|g|` used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.numerator.l1_norm().max(f64::MIN_POSITIVE)
    }

    /// Zeros of `g` in `[omega0, omega0 + 2 pi)`, strictly increasing.
    ///
    /// The numerator degree is the expected count. Samples start at 16 per
    /// zero and double up to 1024 per zero; each sign change is bisected to
    /// full double precision.
    pub fn zeros(&self) -> Result<Vec<f64>> {
        let expected = self.numerator.degree();
        if expected == 0 {
            return Ok(Vec::new());
        }
        let mut samples = SAMPLES_PER_ZERO * expected;
        let mut found = 0;
        for _ in 0..=MAX_REFINE {
            let roots = self.scan(samples)?;
            if roots.len() == expected {
                return Ok(roots);
            }
            found = roots.len();
            samples *= 2;
        }
        Err(Error::ZeroCountMismatch { found, expected })
    }

    fn real_value(&self, theta: f64, tol: f64) -> Result<f64> {
        let v = self.eval_complex(theta);
        if v.im.abs() > tol {
            return Err(Error::PhaseLeak { imag: v.im });
        }
        Ok(v.re)
    }

    fn scan(&self, samples: usize) -> Result<Vec<f64>> {
        let tol = REALNESS_TOL * self.scale();
        let w0 = self.omega0;
        let thetas: Vec<f64> = (0..=samples)
            .map(|j| w0 + TAU * j as f64 / samples as f64)
            .collect();
        let values = thetas
            .iter()
            .map(|&t| self.real_value(t, tol))
            .collect::<Result<Vec<_>>>()?;
        // values at rounding level count as exact zeros
        let floor = ROUNDING_ZERO * self.scale();
        let sign = |v: f64| if v.abs() <= floor { 0.0 } else { v.signum() };
        let mut roots = Vec::new();
        for j in 0..samples {
            let (a, b) = (sign(values[j]), sign(values[j + 1]));
            if a == 0.0 {
                roots.push(thetas[j]);
            } else if b != 0.0 && a != b {
                roots.push(self.bisect(thetas[j], thetas[j + 1], values[j]));
            }
        }
        if sign(values[samples]) == 0.0 {
            roots.push(thetas[samples]);
        }
        for r in roots.iter_mut() {
            if *r >= w0 + TAU - SEAM_SNAP {
                *r = w0;
            }
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|b, a| (*b - *a).abs() < SEAM_SNAP);
        Ok(roots)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
        let sign_lo = f_lo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = self.eval(mid);
            if v == 0.0 {
                return mid;
            }
            if v.signum() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}
