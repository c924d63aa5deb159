//! Invariant para-orthogonal polynomials and the Szegő quadrature rules
//! they generate.
//!
//! An invariant `n`-POP is `P = alpha Phi_n + beta Phi_n^*` with
//! `|alpha| = |beta| != 0`; it satisfies `P^* = kappa P` with
//! `kappa = conj(beta) / alpha` unimodular. Its zeros are simple and lie on
//! the circle, and with weights `1 / K_{n-1}(z_k, z_k)` they give a rule
//! exact on `Λ_{-n+1, n-1}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::RealCircleFunction;
use crate::format;
use crate::measures::{inner_product_poly, MeasureSpec, MomentTable};
use crate::opuc::OpucTable;
use crate::poly::{Laurent, Poly};
use crate::{cis, Error, Result};

/// Relative tolerance on `|alpha| = |beta|`.
pub const MODULUS_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct InvariantPop {
    pub poly: Poly,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub order: usize,
    pub kappa: Complex64,
}

/// Para-orthogonality residuals of a POP against a moment table.
#[derive(Clone, Copy, Debug)]
pub struct ParaOrthogonality {
    /// `max |<P, z^k>|` over `1 <= k <= n - 1`.
    pub max_residual: f64,
    /// `<P, 1>`.
    pub inner_one: Complex64,
    /// `<P, z^n>`.
    pub inner_top: Complex64,
}

impl ParaOrthogonality {
    pub fn is_para_orthogonal(&self, tol: f64) -> bool {
        self.max_residual < tol && self.inner_one.norm() > tol && self.inner_top.norm() > tol
    }
}

/// `P = alpha Phi_n + beta Phi_n^*`.
pub fn make_pop(table: &OpucTable, n: usize, alpha: Complex64, beta: Complex64) -> Result<InvariantPop> {
    if n > table.order() {
        return Err(Error::OrderOutOfRange {
            requested: n,
            available: table.order(),
        });
    }
    let (ma, mb) = (alpha.norm(), beta.norm());
    if ma == 0.0 || (ma - mb).abs() > MODULUS_TOL * ma.max(mb) {
        return Err(Error::ModulusMismatch { alpha: ma, beta: mb });
    }
    let poly = &table.phi(n).scale(alpha) + &table.phi_star(n).scale(beta);
    Ok(InvariantPop {
        poly,
        alpha,
        beta,
        order: n,
        kappa: beta.conj() / alpha,
    })
}

impl InvariantPop {
    /// Wraps an arbitrary invariant polynomial of degree `n`, recovering
    /// `kappa` from `P^* = kappa P`.
    pub fn from_poly(table: &OpucTable, poly: Poly) -> Result<Self> {
        let n = poly.degree();
        if n > table.order() {
            return Err(Error::OrderOutOfRange {
                requested: n,
                available: table.order(),
            });
        }
        // lead = alpha + beta conj(p0), const = alpha p0 + beta with p0 = Phi_n(0)
        let p0 = table.phi(n).coeff(0);
        let (lead, c0) = (poly.leading(), poly.coeff(0));
        let alpha = (lead - p0.conj() * c0) / (1.0 - p0.norm_sqr());
        let beta = c0 - alpha * p0;
        let beta = if n == 0 { Complex64::new(0.0, 0.0) } else { beta };
        let (ma, mb) = (alpha.norm(), beta.norm());
        if n > 0 && (ma == 0.0 || (ma - mb).abs() > 1e-9 * ma.max(mb)) {
            return Err(Error::ModulusMismatch { alpha: ma, beta: mb });
        }
        let kappa = if n == 0 {
            alpha.conj() / alpha
        } else {
            beta.conj() / alpha
        };
        Ok(Self {
            poly,
            alpha,
            beta,
            order: n,
            kappa,
        })
    }

    /// Largest coefficient of `P^* - kappa P`, relative to the largest
    /// coefficient of `P`.
    pub fn invariance_residual(&self) -> f64 {
        let lhs = self.poly.reverse(self.order);
        lhs.max_coeff_diff(&self.poly.scale(self.kappa)) / self.poly.max_abs_coeff()
    }

    pub fn para_orthogonality(&self, m: &MomentTable) -> Result<ParaOrthogonality> {
        let n = self.order;
        let mut max_residual: f64 = 0.0;
        for k in 1..n {
            let v = inner_product_poly(m, &self.poly, &Poly::monomial(k))?;
            max_residual = max_residual.max(v.norm());
        }
        Ok(ParaOrthogonality {
            max_residual,
            inner_one: inner_product_poly(m, &self.poly, &Poly::one())?,
            inner_top: inner_product_poly(m, &self.poly, &Poly::monomial(n))?,
        })
    }

    /// `theta -> sqrt(kappa) e^{-i n theta / 2} P(e^{i theta})`, real on the circle.
    pub fn circle_function(&self, omega0: f64) -> RealCircleFunction {
        RealCircleFunction::new(self.poly.clone(), self.order, self.kappa.sqrt(), omega0)
    }
}

/// The `n` zeros of an invariant POP in `[omega0, omega0 + 2 pi)`.
pub fn pop_zeros(pop: &InvariantPop, omega0: f64) -> Result<Vec<f64>> {
    pop.circle_function(omega0).zeros()
}

/// Nodes on the circle with positive weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub order: usize,
    pub omega0: f64,
    pub node_angles: Vec<f64>,
    pub weights: Vec<f64>,
    pub source: String,
}

/// Szegő rule from the zeros of `pop`, weights `1 / K_{n-1}(z_k, z_k)`.
pub fn make_rule(table: &OpucTable, pop: &InvariantPop, omega0: f64) -> Result<QuadratureRule> {
    let n = pop.order;
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            requested: 0,
            available: table.order(),
        });
    }
    let node_angles = pop_zeros(pop, omega0)?;
    rule_from_nodes(
        table,
        node_angles,
        omega0,
        format!("invariant {n}-POP alpha={} beta={}", pop.alpha, pop.beta),
    )
}

/// Weights `1 / K_{n-1}(z_k, z_k)` at the given nodes.
pub fn rule_from_nodes(table: &OpucTable, node_angles: Vec<f64>, omega0: f64, source: String) -> Result<QuadratureRule> {
    let n = node_angles.len();
    if n == 0 || n > table.order() + 1 {
        return Err(Error::OrderOutOfRange {
            requested: n,
            available: table.order() + 1,
        });
    }
    let weights = node_angles
        .iter()
        .map(|&t| Ok(1.0 / table.kernel_diag(n - 1, cis(t))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadratureRule {
        order: n,
        omega0,
        node_angles,
        weights,
        source,
    })
}

impl QuadratureRule {
    pub fn nodes(&self) -> Vec<Complex64> {
        self.node_angles.iter().map(|&t| cis(t)).collect()
    }

    /// `sum_k H_k F(theta_k)`.
    pub fn apply(&self, f: &dyn Fn(f64) -> f64) -> f64 {
        self.node_angles
            .iter()
            .zip(&self.weights)
            .map(|(&t, &h)| h * f(t))
            .sum()
    }

    /// `sum_k H_k z_k^m`.
    pub fn moment(&self, m: i64) -> Complex64 {
        self.node_angles
            .iter()
            .zip(&self.weights)
            .map(|(&t, &h)| cis(m as f64 * t) * h)
            .sum()
    }

    /// `max_{|m| <= n-1} |sum_k H_k z_k^m - c_m|`.
    pub fn exactness_residual(&self, moments: &MomentTable) -> Result<f64> {
        let top = self.order as i64 - 1;
        let mut worst: f64 = 0.0;
        for m in -top..=top {
            worst = worst.max((self.moment(m) - moments.get(m)?).norm());
        }
        Ok(worst)
    }

    /// Smallest gap between consecutive nodes around the circle.
    pub fn min_gap(&self) -> f64 {
        let n = self.node_angles.len();
        if n < 2 {
            return TAU;
        }
        (0..n)
            .map(|k| {
                let next = if k + 1 < n {
                    self.node_angles[k + 1]
                } else {
                    self.node_angles[0] + TAU
                };
                next - self.node_angles[k]
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// CSV with header `k,theta,weight` (k starts at 1).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,theta,weight\n");
        for (k, (&t, &h)) in self.node_angles.iter().zip(&self.weights).enumerate() {
            out.push_str(&format!("{},{},{}\n", k + 1, format::num(t), format::num(h)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        format::to_json(self)
    }
}

/// Weights from `H_k = L[f(z) / ((z - z_k) f'(z_k))]` with `f = P / z^p`,
/// `P = prod_j (z - z_j)`. Independent of `p` for `0 <= p <= n - 1`.
pub fn weights_via_integral(rule: &QuadratureRule, moments: &MomentTable, p: usize) -> Result<Vec<f64>> {
    let n = rule.order;
    if p >= n {
        return Err(Error::OrderOutOfRange {
            requested: p,
            available: n - 1,
        });
    }
    let nodes = rule.nodes();
    (0..n)
        .map(|k| {
            let others: Vec<Complex64> = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &z)| z)
                .collect();
            // P(z) / (z - z_k) and P'(z_k) = that quotient at z_k
            let q = Poly::from_roots(&others);
            let dp = q.eval(nodes[k]);
            // f'(z_k) = P'(z_k) z_k^{-p}
            let integral = moments.functional(&Laurent::from_poly(&q, p as i64))?;
            let h = integral * nodes[k].powi(p as i32) / dp;
            Ok(h.re)
        })
        .collect()
}

/// Atoms `(theta_k, H_k)` of the discrete measure carried by a rule.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    pub order: usize,
    pub atoms: Vec<(f64, f64)>,
}

impl DiscreteMeasure {
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }
}

pub fn discrete_measure(rule: &QuadratureRule) -> DiscreteMeasure {
    DiscreteMeasure {
        order: rule.order,
        atoms: rule
            .node_angles
            .iter()
            .copied()
            .zip(rule.weights.iter().copied())
            .collect(),
    }
}

/// Continuous test functions for the weak-* convergence probe.
#[derive(Clone, Debug)]
pub enum TestFunction {
    One,
    /// `z + 1/z = 2 cos theta`.
    CosSum,
    /// `|sin(theta / 2)|`.
    AbsSinHalf,
    /// Real part of a Laurent polynomial.
    Laurent(Laurent),
}

impl TestFunction {
    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            TestFunction::One => 1.0,
            TestFunction::CosSum => 2.0 * theta.cos(),
            TestFunction::AbsSinHalf => (theta / 2.0).sin().abs(),
            TestFunction::Laurent(f) => f.eval(cis(theta)).re,
        }
    }

    /// `∫ F dμ`, from moments for Laurent test functions and by direct
    /// integration otherwise.
    pub fn reference(&self, spec: &MeasureSpec) -> Result<f64> {
        let laurent = match self {
            TestFunction::One => return Ok(1.0),
            TestFunction::CosSum => Laurent::new(-1, vec![1.0.into(), 0.0.into(), 1.0.into()]),
            TestFunction::AbsSinHalf => return Ok(spec.integrate(&|t| self.eval(t))),
            TestFunction::Laurent(f) => f.clone(),
        };
        let k = laurent.low().abs().max(laurent.high().abs()) as usize;
        let m = crate::measures::moments(spec, k)?;
        Ok(m.functional(&laurent)?.re)
    }
}

/// `|sum_k H_k F(theta_k) - ∫ F dμ|` for each rule.
pub fn weak_convergence_probe(spec: &MeasureSpec, rules: &[QuadratureRule], f: &TestFunction) -> Result<Vec<f64>> {
    let reference = f.reference(spec)?;
    Ok(rules
        .iter()
        .map(|r| (r.apply(&|t| f.eval(t)) - reference).abs())
        .collect())
}
