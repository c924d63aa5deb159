//! Probability measures on the unit circle, their trigonometric moments and
//! the passage from moments to Schur parameters.
//!
//! Moments follow `c_k = ∫ z^k dμ`, so `c_{-k} = conj(c_k)` and the inner
//! product is `<f, g> = sum_{j,l} f_j conj(g_l) c_{j-l}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::opuc::{OpucTable, SchurSequence, SCHUR_GUARD};
use crate::poly::{Laurent, Poly};
use crate::{cis, gauss, Error, Result};

/// Maximum change in any `|c_k|` tolerated when the integration grid doubles.
pub const RESOLUTION_TOL: f64 = 1e-10;

/// Relative tolerance on the remainder of the division by `(z - w)`.
pub const REMAINDER_TOL: f64 = 1e-10;

/// Panels used for reference integrals of continuous test functions.
const REFERENCE_PANELS: usize = 64;

/// Built-in nonnegative densities, referenced by name from measure files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Density {
    /// Constant density.
    Uniform,
    /// `1 - cos(theta - center)`, i.e. `|z - e^{i center}|^2 / 2`.
    OneMinusCos {
        #[serde(default)]
        center: f64,
    },
    /// Poisson kernel `(1 - |a|^2) / |1 - conj(a) e^{i theta}|^2`; moments are
    /// `c_k = a^k` and the only nonzero Schur parameter is `a_1 = -a`.
    BernsteinSzego { a: [f64; 2] },
    /// `exp(kappa cos(theta - center))`.
    VonMises {
        kappa: f64,
        #[serde(default)]
        center: f64,
    },
}

impl Density {
    pub fn eval(&self, theta: f64) -> f64 {
        match *self {
            Density::Uniform => 1.0,
            Density::OneMinusCos { center } => 1.0 - (theta - center).cos(),
            Density::BernsteinSzego { a } => {
                let a = Complex64::new(a[0], a[1]);
                (1.0 - a.norm_sqr()) / (1.0 - a.conj() * cis(theta)).norm_sqr()
            }
            Density::VonMises { kappa, center } => (kappa * (theta - center).cos()).exp(),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Density::BernsteinSzego { a } if a[0].hypot(a[1]) >= 1.0 => Err(Error::InvalidMeasure(
                "bernstein_szego parameter must satisfy |a| < 1".into(),
            )),
            Density::VonMises { kappa, .. } if !(kappa >= 0.0 && kappa.is_finite()) => Err(
                Error::InvalidMeasure("von_mises kappa must be finite and nonnegative".into()),
            ),
            _ => Ok(()),
        }
    }
}

fn default_grid() -> usize {
    256
}

fn default_panels() -> usize {
    16
}

/// One weighted part of a [`MeasureSpec::Mixture`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub measure: MeasureSpec,
}

/// Declarative description of a measure on the circle. Total mass is
/// normalized to one when moments are computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    /// Normalized arc length.
    Lebesgue,
    /// Smooth periodic density on the whole circle, integrated by the
    /// trapezoid rule on at least `grid` points.
    Density {
        density: Density,
        #[serde(default = "default_grid")]
        grid: usize,
    },
    /// Density restricted to the arc `[lo, hi]`, zero elsewhere, integrated
    /// with 32-point Gauss–Legendre panels.
    ArcDensity {
        density: Density,
        lo: f64,
        hi: f64,
        #[serde(default = "default_panels")]
        panels: usize,
    },
    /// Point masses `(angle, weight)`.
    Atomic { atoms: Vec<(f64, f64)> },
    Mixture { components: Vec<MixtureComponent> },
}

impl MeasureSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Lebesgue => Ok(()),
            MeasureSpec::Density { density, grid } => {
                if *grid == 0 {
                    return Err(Error::InvalidMeasure("grid must be positive".into()));
                }
                density.validate()
            }
            MeasureSpec::ArcDensity {
                density,
                lo,
                hi,
                panels,
            } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi && hi - lo <= TAU) {
                    return Err(Error::InvalidMeasure(format!(
                        "arc [{lo}, {hi}] must satisfy lo < hi <= lo + 2 pi"
                    )));
                }
                if *panels == 0 {
                    return Err(Error::InvalidMeasure("panels must be positive".into()));
                }
                density.validate()
            }
            MeasureSpec::Atomic { atoms } => {
                if atoms.is_empty() {
                    return Err(Error::InvalidMeasure("atomic measure needs atoms".into()));
                }
                for (i, &(theta, w)) in atoms.iter().enumerate() {
                    if !(w > 0.0 && w.is_finite() && theta.is_finite()) {
                        return Err(Error::InvalidMeasure(format!(
                            "atom {i} needs a finite angle and a positive weight"
                        )));
                    }
                    for &(other, _) in &atoms[..i] {
                        if crate::circular_distance(theta, other) < 1e-12 {
                            return Err(Error::InvalidMeasure(format!(
                                "atom {i} repeats angle {theta}"
                            )));
                        }
                    }
                }
                Ok(())
            }
            MeasureSpec::Mixture { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidMeasure("mixture needs components".into()));
                }
                for c in components {
                    if !(c.weight > 0.0 && c.weight.is_finite()) {
                        return Err(Error::InvalidMeasure(
                            "mixture weights must be positive".into(),
                        ));
                    }
                    c.measure.validate()?;
                }
                Ok(())
            }
        }
    }

    /// `∫ f dμ` for a continuous `f(theta)`, accurate to about `1e-12` for
    /// test functions that are smooth away from `theta = 0`.
    pub fn integrate(&self, f: &dyn Fn(f64) -> f64) -> f64 {
        match self {
            MeasureSpec::Lebesgue => {
                let (x, w) = gauss::composite(0.0, TAU, REFERENCE_PANELS);
                x.iter().zip(&w).map(|(&t, &w)| w * f(t)).sum::<f64>() / TAU
            }
            MeasureSpec::Density { density, .. } => {
                let (x, w) = gauss::composite(0.0, TAU, REFERENCE_PANELS);
                weighted_average(&x, &w, density, f)
            }
            MeasureSpec::ArcDensity {
                density,
                lo,
                hi,
                panels,
            } => {
                let (x, w) = gauss::composite(*lo, *hi, (*panels).max(REFERENCE_PANELS));
                weighted_average(&x, &w, density, f)
            }
            MeasureSpec::Atomic { atoms } => {
                let mass: f64 = atoms.iter().map(|a| a.1).sum();
                atoms.iter().map(|&(t, w)| w * f(t)).sum::<f64>() / mass
            }
            MeasureSpec::Mixture { components } => {
                let mass: f64 = components.iter().map(|c| c.weight).sum();
                components
                    .iter()
                    .map(|c| c.weight * c.measure.integrate(f))
                    .sum::<f64>()
                    / mass
            }
        }
    }
}

fn weighted_average(x: &[f64], w: &[f64], density: &Density, f: &dyn Fn(f64) -> f64) -> f64 {
    let mut num = 0.0;
    let mut mass = 0.0;
    for (&t, &wt) in x.iter().zip(w) {
        let r = wt * density.eval(t);
        num += r * f(t);
        mass += r;
    }
    num / mass
}

/// Moments `c_0..c_K` of a probability measure; negative indices follow by
/// conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    c: Vec<Complex64>,
}

impl MomentTable {
    /// Normalizes by `c_0` and sets `c_0 = 1` exactly.
    pub fn from_unnormalized(raw: Vec<Complex64>) -> Result<Self> {
        let Some(&c0) = raw.first() else {
            return Err(Error::InvalidMeasure("empty moment list".into()));
        };
        if !(c0.re > 0.0 && c0.re.is_finite()) {
            return Err(Error::InvalidMeasure(format!("total mass {c0} is not positive")));
        }
        let mut c: Vec<Complex64> = raw.iter().map(|&x| x / c0.re).collect();
        c[0] = Complex64::new(1.0, 0.0);
        Ok(Self { c })
    }

    /// Largest stored index `K`.
    pub fn max_index(&self) -> usize {
        self.c.len() - 1
    }

    /// `c_k` for `-K <= k <= K`.
    pub fn get(&self, k: i64) -> Result<Complex64> {
        let idx = k.unsigned_abs() as usize;
        let v = self.c.get(idx).ok_or(Error::MomentRangeExceeded {
            needed: idx,
            available: self.max_index(),
        })?;
        Ok(if k < 0 { v.conj() } else { *v })
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c
    }

    /// `L[f] = sum_k f_k c_k`.
    pub fn functional(&self, f: &Laurent) -> Result<Complex64> {
        f.terms().map(|(k, a)| Ok(a * self.get(k)?)).sum()
    }
}

/// Computes `c_0..c_K` for `spec`.
///
/// Smooth densities use the trapezoid rule on `max(grid, 8(K+1))` points;
/// arc densities use at least `K` Gauss–Legendre panels. Either way the grid
/// is doubled once and the run fails with [`Error::IntegrationResolution`]
/// if any `|c_k|` moves by more than `1e-10`.
pub fn moments(spec: &MeasureSpec, k_max: usize) -> Result<MomentTable> {
    spec.validate()?;
    MomentTable::from_unnormalized(normalized_moments(spec, k_max)?)
}

fn normalized_moments(spec: &MeasureSpec, k_max: usize) -> Result<Vec<Complex64>> {
    let mut c = match spec {
        MeasureSpec::Lebesgue => {
            let mut c = vec![Complex64::new(0.0, 0.0); k_max + 1];
            c[0] = Complex64::new(1.0, 0.0);
            c
        }
        MeasureSpec::Density { .. } | MeasureSpec::ArcDensity { .. } => {
            let coarse = grid_moments(&discrete_nodes(spec, k_max, 1), k_max);
            let fine = grid_moments(&discrete_nodes(spec, k_max, 2), k_max);
            check_resolution(&coarse, &fine)?;
            fine
        }
        MeasureSpec::Atomic { atoms } => {
            let mass: f64 = atoms.iter().map(|a| a.1).sum();
            (0..=k_max)
                .map(|k| {
                    atoms
                        .iter()
                        .map(|&(t, w)| cis(k as f64 * t) * w)
                        .sum::<Complex64>()
                        / mass
                })
                .collect()
        }
        MeasureSpec::Mixture { components } => {
            let mass: f64 = components.iter().map(|c| c.weight).sum();
            let mut acc = vec![Complex64::new(0.0, 0.0); k_max + 1];
            for comp in components {
                let part = normalized_moments(&comp.measure, k_max)?;
                for (a, p) in acc.iter_mut().zip(part) {
                    *a += p * (comp.weight / mass);
                }
            }
            acc
        }
    };
    c[0] = Complex64::new(1.0, 0.0);
    Ok(c)
}

/// Nodes and probability weights approximating `spec`, on the grid used for
/// moments up to `k_max`; `refine` multiplies the grid size.
fn discrete_nodes(spec: &MeasureSpec, k_max: usize, refine: usize) -> Vec<(f64, f64)> {
    let nodes: Vec<(f64, f64)> = match spec {
        MeasureSpec::Lebesgue => {
            let m = 2 * (k_max + 1) * refine;
            (0..m).map(|j| (TAU * j as f64 / m as f64, 1.0)).collect()
        }
        MeasureSpec::Density { density, grid } => {
            let m = (*grid).max(8 * (k_max + 1)) * refine;
            (0..m)
                .map(|j| {
                    let t = TAU * j as f64 / m as f64;
                    (t, density.eval(t))
                })
                .collect()
        }
        MeasureSpec::ArcDensity {
            density,
            lo,
            hi,
            panels,
        } => {
            let p = (*panels).max(k_max).max(1) * refine;
            let (x, w) = gauss::composite(*lo, *hi, p);
            x.into_iter().zip(w).map(|(t, w)| (t, w * density.eval(t))).collect()
        }
        MeasureSpec::Atomic { atoms } => atoms.clone(),
        MeasureSpec::Mixture { components } => {
            let total: f64 = components.iter().map(|c| c.weight).sum();
            components
                .iter()
                .flat_map(|c| {
                    discrete_nodes(&c.measure, k_max, refine)
                        .into_iter()
                        .map(move |(t, w)| (t, w * c.weight / total))
                })
                .collect()
        }
    };
    let mass: f64 = nodes.iter().map(|n| n.1).sum();
    nodes.into_iter().map(|(t, w)| (t, w / mass)).collect()
}

fn grid_moments(nodes: &[(f64, f64)], k_max: usize) -> Vec<Complex64> {
    (0..=k_max)
        .map(|k| nodes.iter().map(|&(t, w)| cis(k as f64 * t) * w).sum())
        .collect()
}

/// A discrete probability measure reproducing the moments `c_0..c_K` of
/// `spec` to the accuracy guaranteed by [`moments`].
pub fn discretize(spec: &MeasureSpec, k_max: usize) -> Result<Vec<(f64, f64)>> {
    moments(spec, k_max)?;
    Ok(discrete_nodes(spec, k_max, 2))
}

/// Schur parameters `a_1..a_{n_max}` of `spec` from the nodes of
/// [`discretize`].
///
/// The orthonormal `phi_n` are built on the nodes by Arnoldi on
/// multiplication by `z` with full reorthogonalization, and
/// `a_{n+1} = -<z phi_n, phi_n^*> = -sum_j w_j z_j^{1-n} phi_n(z_j)^2`
/// because `phi_n^* = z^n conj(phi_n)` on the circle. Unlike
/// [`schur_from_moments`] this never forms the Toeplitz system, so it stays
/// accurate for measures with gaps, whose Toeplitz matrices become
/// numerically singular at moderate order.
pub fn schur_from_measure(spec: &MeasureSpec, n_max: usize) -> Result<SchurSequence> {
    let nodes = discretize(spec, n_max)?;
    let z: Vec<Complex64> = nodes.iter().map(|n| cis(n.0)).collect();
    let w: Vec<f64> = nodes.iter().map(|n| n.1).collect();
    let dot = |f: &[Complex64], g: &[Complex64]| -> Complex64 {
        f.iter().zip(g).zip(&w).map(|((a, b), &w)| a * b.conj() * w).sum()
    };
    let mut basis: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); z.len()]];
    let mut params = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let phi = &basis[n];
        let s: Complex64 = nodes
            .iter()
            .zip(phi)
            .map(|(&(t, w), &p)| cis((1.0 - n as f64) * t) * p * p * w)
            .sum();
        let a = -s;
        if a.norm() > 1.0 - SCHUR_GUARD || !a.norm().is_finite() {
            return Err(Error::NotPositiveDefinite {
                n: n + 1,
                modulus: a.norm(),
            });
        }
        params.push(a);
        if n + 1 == n_max {
            break;
        }
        let mut v: Vec<Complex64> = z.iter().zip(phi).map(|(z, p)| z * p).collect();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&v, q);
                v.iter_mut().zip(q).for_each(|(x, q)| *x -= c * q);
            }
        }
        let norm = dot(&v, &v).re.sqrt();
        if norm.is_nan() || norm <= 1e-14 {
            return Err(Error::NotPositiveDefinite {
                n: n + 2,
                modulus: 1.0,
            });
        }
        v.iter_mut().for_each(|x| *x /= norm);
        basis.push(v);
    }
    SchurSequence::new(params)
}

fn check_resolution(coarse: &[Complex64], fine: &[Complex64]) -> Result<()> {
    for (k, (a, b)) in coarse.iter().zip(fine).enumerate() {
        let change = (a.norm() - b.norm()).abs();
        if change > RESOLUTION_TOL {
            return Err(Error::IntegrationResolution { k, change });
        }
    }
    Ok(())
}

/// `<f, g> = ∫ f conj(g) dμ` by moment contraction.
pub fn inner_product(m: &MomentTable, f: &Laurent, g: &Laurent) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, a) in f.terms() {
        for (l, b) in g.terms() {
            acc += a * b.conj() * m.get(j - l)?;
        }
    }
    Ok(acc)
}

/// [`inner_product`] for ordinary polynomials.
pub fn inner_product_poly(m: &MomentTable, f: &Poly, g: &Poly) -> Result<Complex64> {
    inner_product(m, &Laurent::from_poly(f, 0), &Laurent::from_poly(g, 0))
}

/// Schur parameters `a_1..a_{n_max}` of the measure with moments `m`.
///
/// Runs the Szegő recurrence alongside, with
/// `a_{n+1} = -<z Phi_n, 1> / e_n` (from `<Phi_n^*, 1> = e_n`).
pub fn schur_from_moments(m: &MomentTable, n_max: usize) -> Result<SchurSequence> {
    if m.max_index() < n_max {
        return Err(Error::MomentRangeExceeded {
            needed: n_max,
            available: m.max_index(),
        });
    }
    let mut phi = Poly::one();
    let mut phi_star = Poly::one();
    let mut e = 1.0;
    let mut params = Vec::with_capacity(n_max);
    for n in 0..n_max {
        // <z Phi_n, 1> = sum_j phi_j c_{j+1}
        let s: Complex64 = phi
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, &p)| p * m.as_slice()[j + 1])
            .sum();
        let a = -s / e;
        if a.norm() > 1.0 - SCHUR_GUARD || !a.norm().is_finite() {
            return Err(Error::NotPositiveDefinite {
                n: n + 1,
                modulus: a.norm(),
            });
        }
        let z_phi = phi.shift(1);
        let next = &z_phi + &(&phi_star * a);
        phi_star = &phi_star.shift(0) + &(&z_phi * a.conj());
        phi = next;
        e *= 1.0 - a.norm_sqr();
        params.push(a);
    }
    SchurSequence::new(params)
}

/// Moments `c_0..c_K` of the measure with the given Schur parameters,
/// continued with zero parameters past `max_order` (Bernstein–Szegő
/// extension). Uses `<Phi_{n+1}, 1> = 0` to solve for `c_{n+1}`.
pub fn moments_from_schur(schur: &SchurSequence, k_max: usize) -> MomentTable {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    let mut phi = Poly::one();
    let mut phi_star = Poly::one();
    for n in 0..k_max {
        let a = if n < schur.max_order() {
            schur.get(n + 1)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let z_phi = phi.shift(1);
        let next = &z_phi + &(&phi_star * a);
        phi_star = &phi_star.shift(0) + &(&z_phi * a.conj());
        phi = next;
        let tail: Complex64 = (0..=n).map(|j| phi.coeff(j) * c[j]).sum();
        c.push(-tail);
    }
    MomentTable { c }
}

/// Moments of `|z - w|^2 dμ`, normalized to mass one:
/// `c~_k ∝ 2 c_k - w c_{k-1} - conj(w) c_{k+1}`. One index is lost.
pub fn modified_moments(m: &MomentTable, w: Complex64) -> Result<MomentTable> {
    if m.max_index() == 0 {
        return Err(Error::MomentRangeExceeded {
            needed: 1,
            available: 0,
        });
    }
    let raw = (0..m.max_index() as i64)
        .map(|k| Ok(m.get(k)? * 2.0 - w * m.get(k - 1)? - w.conj() * m.get(k + 1)?))
        .collect::<Result<Vec<_>>>()?;
    MomentTable::from_unnormalized(raw)
}

/// Monic orthogonal polynomials `psi_0..psi_{n_max}` of `|z - w|^2 dμ` from
/// `(z - w) psi_{n-1}(z) = Phi_n(z) - Phi_n(w) K_{n-1}(z, w) / K_{n-1}(w, w)`.
///
/// Needs `n_max + 1 <= table.order()` and `|w| = 1`.
pub fn christoffel_modify(table: &OpucTable, w: Complex64, n_max: usize) -> Result<Vec<Poly>> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() > 1e-12 {
        return Err(Error::OffCircle { modulus });
    }
    if n_max + 1 > table.order() {
        return Err(Error::OrderOutOfRange {
            requested: n_max + 1,
            available: table.order(),
        });
    }
    (1..=n_max + 1)
        .map(|n| {
            let kernel = table.kernel_poly(n - 1, w)?;
            let k_ww = table.kernel_diag(n - 1, w)?;
            let scale = table.phi(n).eval(w) / k_ww;
            let rhs = table.phi(n) - &kernel.scale(scale);
            let (mut q, rem) = rhs.divide_linear(w);
            if rem.norm() > REMAINDER_TOL * rhs.max_abs_coeff().max(1.0) {
                return Err(Error::RemainderTooLarge {
                    remainder: rem.norm(),
                });
            }
            // exactly monic
            let mut coeffs = q.coeffs().to_vec();
            coeffs[n - 1] = Complex64::new(1.0, 0.0);
            q = Poly::new(coeffs);
            Ok(q)
        })
        .collect()
}
